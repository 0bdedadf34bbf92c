#include "strongmeans/dyadic.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "strongmeans/errors.hpp"

namespace sm {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool supported_factor(Factor c) {
    static const Factor ok[] = {{9, 8}, {2, 1}, {3, 1}, {4, 1}, {9, 2}, {5, 1}};
    return std::find(std::begin(ok), std::end(ok), c) != std::end(ok);
}

void check_interval(const DyadicInterval& I, int jmax) {
    if (I.level < 0 || I.level > jmax) throw ResolutionError("dyadic level out of range");
    if (I.index < 0 || I.index >= (std::int64_t{1} << I.level))
        throw std::out_of_range("dyadic index out of range");
}

std::pair<DyadicInterval, DyadicInterval> children(const DyadicInterval& I, int jmax) {
    check_interval(I, jmax);
    if (I.level >= jmax) throw ResolutionError("cannot split below J_max");
    return {{I.level + 1, 2 * I.index}, {I.level + 1, 2 * I.index + 1}};
}

std::vector<DyadicCube> children(const DyadicCube& Q, int jmax) {
    if (Q.level >= jmax) throw ResolutionError("cannot split below J_max");
    const int d = Q.dim();
    std::vector<DyadicCube> out;
    out.reserve(std::size_t{1} << d);
    for (int mask = 0; mask < (1 << d); ++mask) {
        DyadicCube c{Q.level + 1, std::vector<std::int64_t>(static_cast<std::size_t>(d))};
        for (int i = 0; i < d; ++i)
            c.index[static_cast<std::size_t>(i)] = 2 * Q.index[static_cast<std::size_t>(i)] + ((mask >> i) & 1);
        out.push_back(std::move(c));
    }
    return out;
}

DyadicInterval parent(const DyadicInterval& I) {
    if (I.level == 0) throw ResolutionError("root has no parent");
    return {I.level - 1, I.index / 2};
}

bool contains(const DyadicInterval& outer, const DyadicInterval& inner) {
    if (inner.level < outer.level) return false;
    return (inner.index >> (inner.level - outer.level)) == outer.index;
}

bool overlaps(const DyadicInterval& a, const DyadicInterval& b) {
    return contains(a, b) || contains(b, a);
}

bool overlaps(const DyadicCube& a, const DyadicCube& b) {
    for (int i = 0; i < a.dim(); ++i)
        if (!overlaps(a.axis(i), b.axis(i))) return false;
    return true;
}

ScaledInterval make_arc(std::int64_t lo, std::int64_t len, std::int64_t scale) {
    if (len <= 0) throw PreconditionError("empty arc");
    if (len >= scale) return {0, scale, scale};
    lo = mod(lo, scale);
    return {lo, lo + len, scale};
}

ScaledInterval to_arc(const DyadicInterval& I, int jmax) {
    check_interval(I, jmax);
    const std::int64_t S = scale_for(jmax);
    const std::int64_t len = S >> I.level;
    return make_arc(I.index * len, len, S);
}

ScaledBox to_box(const DyadicCube& Q, int jmax) {
    ScaledBox b;
    for (int i = 0; i < Q.dim(); ++i) b.axes.push_back(to_arc(Q.axis(i), jmax));
    return b;
}

ScaledInterval dilate(const DyadicInterval& I, Factor c, int jmax) {
    if (!supported_factor(c)) throw InvalidFactor("unsupported dilation factor");
    check_interval(I, jmax);
    const std::int64_t S = scale_for(jmax);
    const std::int64_t unit = S >> I.level;  // multiple of 16
    const std::int64_t len = unit / c.den * c.num;
    const std::int64_t center2 = (2 * I.index + 1) * unit;
    return make_arc((center2 - len) / 2, len, S);
}

ScaledBox dilate(const DyadicCube& Q, Factor c, int jmax) {
    ScaledBox b;
    for (int i = 0; i < Q.dim(); ++i) b.axes.push_back(dilate(Q.axis(i), c, jmax));
    return b;
}

ScaledInterval dilate_arc(const ScaledInterval& A, Factor c) {
    const std::int64_t L = A.length();
    if ((L * c.num) % c.den != 0) throw InvalidFactor("dilation not representable at this scale");
    const std::int64_t len = L * c.num / c.den;
    const std::int64_t twice_lo = 2 * A.lo + L - len;
    if (twice_lo % 2 != 0) throw InvalidFactor("dilation not representable at this scale");
    return make_arc(twice_lo / 2, len, A.scale);
}

bool intersects(const ScaledInterval& a, const ScaledInterval& b) {
    if (a.full() || b.full()) return true;
    const std::int64_t S = a.scale;
    return mod(b.lo - a.lo, S) < a.length() || mod(a.lo - b.lo, S) < b.length();
}

bool intersects(const ScaledBox& a, const ScaledBox& b) {
    for (int i = 0; i < a.dim(); ++i)
        if (!intersects(a.axes[static_cast<std::size_t>(i)], b.axes[static_cast<std::size_t>(i)])) return false;
    return true;
}

bool arc_contains(const ScaledInterval& outer, const ScaledInterval& inner) {
    if (outer.full()) return true;
    if (inner.full()) return false;
    return mod(inner.lo - outer.lo, outer.scale) + inner.length() <= outer.length();
}

bool box_contains(const ScaledBox& outer, const ScaledBox& inner) {
    for (int i = 0; i < outer.dim(); ++i)
        if (!arc_contains(outer.axes[static_cast<std::size_t>(i)], inner.axes[static_cast<std::size_t>(i)])) return false;
    return true;
}

std::int64_t torus_distance_ticks(const ScaledInterval& a, const ScaledInterval& b) {
    if (intersects(a, b)) return 0;
    const std::int64_t S = a.scale;
    return std::min(mod(b.lo - a.hi, S), mod(a.lo - b.hi, S));
}

Rational torus_distance(const ScaledInterval& a, const ScaledInterval& b) {
    return ticks_to_rational(torus_distance_ticks(a, b), a.scale);
}

bool boxes_touch(const ScaledBox& a, const ScaledBox& b) {
    for (int i = 0; i < a.dim(); ++i)
        if (torus_distance_ticks(a.axes[static_cast<std::size_t>(i)], b.axes[static_cast<std::size_t>(i)]) != 0)
            return false;
    return true;
}

bool adjacent(const DyadicInterval& a, const DyadicInterval& b, int jmax) {
    if (overlaps(a, b)) throw PreconditionError("adjacent: intervals overlap");
    return torus_distance_ticks(to_arc(a, jmax), to_arc(b, jmax)) == 0;
}

bool adjacent(const DyadicCube& a, const DyadicCube& b, int jmax) {
    if (overlaps(a, b)) throw PreconditionError("adjacent: cubes overlap");
    return boxes_touch(to_box(a, jmax), to_box(b, jmax));
}

std::vector<std::pair<std::int64_t, std::int64_t>> union_pieces(const std::vector<ScaledInterval>& arcs) {
    std::vector<std::pair<std::int64_t, std::int64_t>> seg;
    for (const auto& a : arcs) {
        if (a.full()) return {{0, a.scale}};
        if (a.hi > a.scale) {
            seg.emplace_back(a.lo, a.scale);
            seg.emplace_back(0, a.hi - a.scale);
        } else {
            seg.emplace_back(a.lo, a.hi);
        }
    }
    std::sort(seg.begin(), seg.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (const auto& s : seg) {
        if (!out.empty() && s.first <= out.back().second)
            out.back().second = std::max(out.back().second, s.second);
        else
            out.push_back(s);
    }
    return out;
}

std::int64_t union_ticks(const std::vector<ScaledInterval>& arcs) {
    std::int64_t total = 0;
    for (const auto& [lo, hi] : union_pieces(arcs)) total += hi - lo;
    return total;
}

Rational union_measure(const std::vector<ScaledInterval>& arcs) {
    if (arcs.empty()) return Rational(0);
    return ticks_to_rational(union_ticks(arcs), arcs.front().scale);
}

std::vector<Rect> union_rects(const std::vector<ScaledBox>& boxes) {
    std::vector<Rect> raw;
    for (const auto& b : boxes) {
        if (b.dim() != 2) throw PreconditionError("union_rects expects 2-d boxes");
        auto px = union_pieces({b.axes[0]});
        auto py = union_pieces({b.axes[1]});
        for (const auto& [x0, x1] : px)
            for (const auto& [y0, y1] : py) raw.push_back({x0, x1, y0, y1});
    }
    std::vector<std::int64_t> xs;
    for (const auto& r : raw) {
        xs.push_back(r.x0);
        xs.push_back(r.x1);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<Rect> out;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        const std::int64_t a = xs[i], b = xs[i + 1];
        std::vector<std::pair<std::int64_t, std::int64_t>> ys;
        for (const auto& r : raw)
            if (r.x0 <= a && r.x1 >= b) ys.emplace_back(r.y0, r.y1);
        std::sort(ys.begin(), ys.end());
        std::vector<std::pair<std::int64_t, std::int64_t>> merged;
        for (const auto& y : ys) {
            if (!merged.empty() && y.first <= merged.back().second)
                merged.back().second = std::max(merged.back().second, y.second);
            else
                merged.push_back(y);
        }
        for (const auto& [y0, y1] : merged) out.push_back({a, b, y0, y1});
    }
    return out;
}

Rational union_measure(const std::vector<ScaledBox>& boxes) {
    if (boxes.empty()) return Rational(0);
    const int d = boxes.front().dim();
    if (d == 1) {
        std::vector<ScaledInterval> arcs;
        for (const auto& b : boxes) arcs.push_back(b.axes[0]);
        return union_measure(arcs);
    }
    const std::int64_t S = boxes.front().axes[0].scale;
    Rational area(0);
    for (const auto& r : union_rects(boxes))
        area += Rational(r.x1 - r.x0) * Rational(r.y1 - r.y0);
    return area / (Rational(S) * Rational(S));
}

Rational ticks_to_rational(std::int64_t ticks, std::int64_t scale) { return Rational(ticks, scale); }

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

}  // namespace sm
