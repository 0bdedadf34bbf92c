#include "strongmeans/czd.hpp"

#include <cmath>
#include <deque>

#include "strongmeans/errors.hpp"

namespace sm {

namespace {

// sums[j][flat index of cell at level j] = sum of |f| samples in the cell.
std::vector<std::vector<double>> level_sums(const GridFunction& f) {
    const int d = f.d, J = f.J;
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(J + 1));
    sums[static_cast<std::size_t>(J)] = f.abs_values();
    for (int j = J - 1; j >= 0; --j) {
        const std::size_t side = std::size_t{1} << j;
        auto& cur = sums[static_cast<std::size_t>(j)];
        const auto& fine = sums[static_cast<std::size_t>(j + 1)];
        if (d == 1) {
            cur.assign(side, 0.0);
            for (std::size_t k = 0; k < side; ++k) cur[k] = fine[2 * k] + fine[2 * k + 1];
        } else {
            cur.assign(side * side, 0.0);
            const std::size_t fs = 2 * side;
            for (std::size_t a = 0; a < side; ++a)
                for (std::size_t b = 0; b < side; ++b)
                    cur[a * side + b] = (fine[2 * a * fs + 2 * b] + fine[2 * a * fs + 2 * b + 1]) +
                                        (fine[(2 * a + 1) * fs + 2 * b] + fine[(2 * a + 1) * fs + 2 * b + 1]);
        }
    }
    return sums;
}

std::size_t flat(const DyadicCube& Q) {
    if (Q.dim() == 1) return static_cast<std::size_t>(Q.index[0]);
    return static_cast<std::size_t>(Q.index[0]) * (std::size_t{1} << Q.level) + static_cast<std::size_t>(Q.index[1]);
}

}  // namespace

std::vector<DyadicInterval> CZDecomposition::intervals() const {
    std::vector<DyadicInterval> out;
    for (const auto& q : bad) out.push_back(q.axis(0));
    return out;
}

double CZDecomposition::bad_measure() const {
    double m = 0;
    for (const auto& q : bad) m += std::ldexp(1.0, -d * q.level);
    return m;
}

CZDecomposition decompose(const GridFunction& f, double lambda) {
    if (f.d != 1 && f.d != 2) throw PreconditionError("decompose supports d = 1, 2");
    if (!(lambda > 0)) throw PreconditionError("lambda must be positive");
    CZDecomposition cz;
    cz.lambda = lambda;
    cz.d = f.d;
    cz.J = f.J;
    cz.source = &f;
    const auto sums = level_sums(f);
    auto avg = [&](const DyadicCube& q) {
        return std::ldexp(sums[static_cast<std::size_t>(q.level)][flat(q)], -f.d * (f.J - q.level));
    };
    DyadicCube root{0, std::vector<std::int64_t>(static_cast<std::size_t>(f.d), 0)};
    if (avg(root) > lambda) throw HeightTooLow("root average exceeds lambda");
    std::deque<DyadicCube> queue{root};
    while (!queue.empty()) {
        DyadicCube q = std::move(queue.front());
        queue.pop_front();
        const double a = avg(q);
        if (a > lambda) {
            cz.bad.push_back(q);
            cz.bad_avg.push_back(a);
        } else if (q.level < f.J) {
            for (auto& c : children(q, f.J)) queue.push_back(std::move(c));
        }
    }
    return cz;
}

ScaleSplit split_by_scale(const CZDecomposition& cz, long N) {
    if (N <= 0 || N > (1L << cz.J)) throw PreconditionError("split_by_scale: N out of range");
    ScaleSplit s;
    for (const auto& q : cz.bad) {
        if ((1L << q.level) < N)
            s.B1.push_back(q);
        else
            s.B2.push_back(q);
    }
    return s;
}

std::vector<unsigned char> bad_mask(const CZDecomposition& cz) {
    const std::size_t side = std::size_t{1} << cz.J;
    std::vector<unsigned char> mask(cz.d == 1 ? side : side * side, 0);
    for (const auto& q : cz.bad) {
        const std::size_t w = side >> q.level;
        const std::size_t a0 = static_cast<std::size_t>(q.index[0]) * w;
        if (cz.d == 1) {
            for (std::size_t i = a0; i < a0 + w; ++i) mask[i] = 1;
        } else {
            const std::size_t b0 = static_cast<std::size_t>(q.index[1]) * w;
            for (std::size_t i = a0; i < a0 + w; ++i)
                for (std::size_t j = b0; j < b0 + w; ++j) mask[i * side + j] = 1;
        }
    }
    return mask;
}

GridFunction good_part(const CZDecomposition& cz) {
    GridFunction g = *cz.source;
    const auto mask = bad_mask(cz);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (mask[i]) g.samples[i] = 0;
    return g;
}

GridFunction bad_part(const CZDecomposition& cz) {
    GridFunction b = *cz.source;
    const auto mask = bad_mask(cz);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!mask[i]) b.samples[i] = 0;
    return b;
}

}  // namespace sm

namespace sm {

namespace {

double cell_sum(const GridFunction& f, const DyadicCube& q) {
    const std::size_t side = f.side();
    const std::size_t w = side >> q.level;
    const std::size_t a0 = static_cast<std::size_t>(q.index[0]) * w;
    double s = 0;
    if (f.d == 1) {
        for (std::size_t i = a0; i < a0 + w; ++i) s += std::abs(f.samples[i]);
    } else {
        const std::size_t b0 = static_cast<std::size_t>(q.index[1]) * w;
        for (std::size_t i = a0; i < a0 + w; ++i)
            for (std::size_t j = b0; j < b0 + w; ++j) s += std::abs(f.samples[i * side + j]);
    }
    return s;
}

}  // namespace

CZAudit audit(const CZDecomposition& cz) {
    CZAudit a;
    const GridFunction& f = *cz.source;
    const std::size_t side = f.side();
    std::vector<int> paint(f.size(), 0);
    Rational total(0);
    for (const auto& q : cz.bad) {
        const std::size_t w = side >> q.level;
        const std::size_t a0 = static_cast<std::size_t>(q.index[0]) * w;
        if (f.d == 1) {
            for (std::size_t i = a0; i < a0 + w; ++i) ++paint[i];
        } else {
            const std::size_t b0 = static_cast<std::size_t>(q.index[1]) * w;
            for (std::size_t i = a0; i < a0 + w; ++i)
                for (std::size_t j = b0; j < b0 + w; ++j) ++paint[i * side + j];
        }
        const double cells = std::ldexp(1.0, f.d * (f.J - q.level));
        const double avg = cell_sum(f, q) / cells;
        if (!(avg > cz.lambda && avg <= std::ldexp(cz.lambda, f.d))) a.avg_bounds = false;
        if (q.level > 0) {
            DyadicCube p{q.level - 1, q.index};
            for (auto& v : p.index) v /= 2;
            if (cell_sum(f, p) / (cells * std::ldexp(1.0, f.d)) > cz.lambda) a.maximal = false;
        } else {
            a.maximal = false;
        }
        total += Rational(1, std::int64_t{1} << (f.d * q.level));
    }
    for (int c : paint)
        if (c > 1) a.disjoint = false;
    if (total > Rational(f.l1()) / Rational(cz.lambda)) a.weak_type = false;
    const GridFunction g = good_part(cz), b = bad_part(cz);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (g.samples[i] + b.samples[i] != f.samples[i]) a.reconstruction = false;
        if (std::abs(g.samples[i]) > cz.lambda) a.good_bound = false;
        if (paint[i] == 0 && std::abs(f.samples[i]) > cz.lambda) a.good_bound = false;
    }
    return a;
}

bool nested(const CZDecomposition& lower, const CZDecomposition& higher) {
    const auto lo = bad_mask(lower), hi = bad_mask(higher);
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (hi[i] && !lo[i]) return false;
    return true;
}

}  // namespace sm
