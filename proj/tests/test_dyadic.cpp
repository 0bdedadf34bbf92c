#include <doctest.h>

#include <algorithm>
#include <random>

#include "strongmeans/dyadic.hpp"
#include "strongmeans/errors.hpp"

using namespace sm;

namespace {

constexpr std::int64_t S = scale_for(kDefaultJmax);

// Endpoints of an arc as rationals on the real line (lo in [0,1)).
std::pair<Rational, Rational> ends(const ScaledInterval& a) {
    return {Rational(a.lo, a.scale), Rational(a.hi, a.scale)};
}

// Center/half-length dilation done with rationals only.
std::pair<Rational, Rational> rational_dilate(Rational lo, Rational hi, Rational c) {
    Rational mid = (lo + hi) / 2, half = (hi - lo) / 2 * c;
    Rational a = mid - half, b = mid + half;
    while (a < 0) {
        a += 1;
        b += 1;
    }
    return {a, b};
}

// Sweep-line over exact rational endpoints, arcs unrolled onto [0,2) then folded.
Rational oracle_union(std::vector<std::pair<Rational, Rational>> arcs) {
    std::vector<std::pair<Rational, Rational>> pieces;
    for (auto [a, b] : arcs) {
        if (b - a >= 1) return Rational(1);
        if (b <= 1) {
            pieces.push_back({a, b});
        } else {
            pieces.push_back({a, Rational(1)});
            pieces.push_back({Rational(0), b - 1});
        }
    }
    std::sort(pieces.begin(), pieces.end());
    Rational total = 0, cur_lo = -1, cur_hi = -1;
    for (auto [a, b] : pieces) {
        if (a > cur_hi) {
            if (cur_hi > cur_lo) total += cur_hi - cur_lo;
            cur_lo = a;
            cur_hi = b;
        } else if (b > cur_hi) {
            cur_hi = b;
        }
    }
    if (cur_hi > cur_lo) total += cur_hi - cur_lo;
    return total;
}

}  // namespace

TEST_CASE("children of the root and index doubling") {
    auto [a, b] = children(DyadicInterval{0, 0});
    CHECK(a == DyadicInterval{1, 0});
    CHECK(b == DyadicInterval{1, 1});
    auto [c, d] = children(DyadicInterval{2, 3});
    CHECK(c == DyadicInterval{3, 6});
    CHECK(d == DyadicInterval{3, 7});
    CHECK_THROWS_AS(children(DyadicInterval{kDefaultJmax, 5}), ResolutionError);
    CHECK(parent(DyadicInterval{3, 7}) == DyadicInterval{2, 3});
}

TEST_CASE("cube children tile the parent") {
    DyadicCube Q{2, {1, 3}};
    auto kids = children(Q);
    REQUIRE(kids.size() == 4);
    for (const auto& k : kids) {
        CHECK(k.level == 3);
        CHECK(k.index[0] / 2 == 1);
        CHECK(k.index[1] / 2 == 3);
    }
}

TEST_CASE("dilation examples") {
    auto A = dilate(DyadicInterval{1, 0}, kNineEighths);
    CHECK(A.length() == 9 * S / 16);
    CHECK(ticks_to_rational(A.lo, S) == Rational(31, 32));
    CHECK(ticks_to_rational(A.hi, S) == Rational(31, 32) + Rational(9, 16));

    auto B = dilate(DyadicInterval{3, 0}, Factor{5, 1});
    CHECK(ticks_to_rational(B.length(), S) == Rational(5, 8));
    CHECK(ticks_to_rational(B.lo, S) == Rational(3, 4));

    auto C = dilate(DyadicInterval{3, 6}, kNineEighths);
    auto [lo, hi] = ends(C);
    auto [olo, ohi] = rational_dilate(Rational(3, 4), Rational(7, 8), Rational(9, 8));
    CHECK(lo == olo);
    CHECK(hi == ohi);
    CHECK(lo == Rational(95, 128));
    CHECK(hi == Rational(113, 128));

    CHECK_THROWS_AS(dilate(DyadicInterval{3, 0}, Factor{7, 3}), InvalidFactor);
}

TEST_CASE("dilation matches a rational oracle for every supported factor") {
    std::mt19937_64 rng(11);
    const Factor fs[] = {{9, 8}, {2, 1}, {3, 1}, {4, 1}, {9, 2}, {5, 1}};
    for (int t = 0; t < 2000; ++t) {
        int j = static_cast<int>(rng() % 11);
        std::int64_t k = static_cast<std::int64_t>(rng() % (std::uint64_t{1} << j));
        Factor c = fs[rng() % 6];
        auto A = dilate(DyadicInterval{j, k}, c);
        Rational len = Rational(1, std::int64_t{1} << j);
        auto [olo, ohi] = rational_dilate(Rational(k) * len, Rational(k + 1) * len, c.value());
        if (ohi - olo >= 1) {
            CHECK(A.full());
            continue;
        }
        auto [lo, hi] = ends(A);
        CHECK(lo == olo);
        CHECK(hi == ohi);
    }
}

TEST_CASE("torus distance examples") {
    auto a = to_arc(DyadicInterval{3, 0});
    auto b = to_arc(DyadicInterval{3, 2});
    CHECK(torus_distance(a, b) == Rational(1, 8));
    CHECK(torus_distance(a, to_arc(DyadicInterval{3, 7})) == 0);
    auto da = dilate(DyadicInterval{3, 0}, kNineEighths);
    auto db = dilate(DyadicInterval{3, 2}, kNineEighths);
    CHECK(torus_distance(da, db) == Rational(1, 8) - Rational(1, 16) * (Rational(1, 8) + Rational(1, 8)));
    CHECK(torus_distance(da, db) == Rational(7, 64));
}

TEST_CASE("adjacency examples") {
    CHECK(adjacent(DyadicInterval{2, 0}, DyadicInterval{2, 1}));
    CHECK_FALSE(adjacent(DyadicInterval{3, 0}, DyadicInterval{3, 2}));
    CHECK(adjacent(DyadicInterval{3, 0}, DyadicInterval{3, 7}));
    CHECK_THROWS_AS(adjacent(DyadicInterval{1, 0}, DyadicInterval{2, 1}), PreconditionError);
}

TEST_CASE("adjacency and containment agree with rational endpoints") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 3000; ++t) {
        int ja = static_cast<int>(rng() % 7), jb = static_cast<int>(rng() % 7);
        DyadicInterval A{ja, static_cast<std::int64_t>(rng() % (1u << ja))};
        DyadicInterval B{jb, static_cast<std::int64_t>(rng() % (1u << jb))};
        Rational la(A.index, 1L << ja), ha(A.index + 1, 1L << ja);
        Rational lb(B.index, 1L << jb), hb(B.index + 1, 1L << jb);
        bool ov = la < hb && lb < ha;
        CHECK(overlaps(A, B) == ov);
        CHECK(contains(A, B) == (la <= lb && hb <= ha));
        if (!ov) {
            bool touch = ha == lb || hb == la || (ha == 1 && lb == 0) || (hb == 1 && la == 0);
            CHECK(adjacent(A, B) == touch);
        }
    }
}

TEST_CASE("union measure examples") {
    std::vector<ScaledInterval> arcs = {to_arc(DyadicInterval{2, 0}), make_arc(S / 8, S / 4, S)};
    CHECK(union_measure(arcs) == Rational(3, 8));
    CHECK(union_measure(std::vector<ScaledInterval>{}) == 0);

    std::vector<ScaledInterval> five = {dilate(DyadicInterval{3, 0}, Factor{5, 1}),
                                        dilate(DyadicInterval{3, 4}, Factor{5, 1})};
    CHECK(union_measure(five) == 1);
    CHECK(oracle_union({ends(five[0]), ends(five[1])}) == 1);
}

TEST_CASE("union measure against a rational sweep oracle") {
    std::mt19937_64 rng(21);
    const Factor fs[] = {{1, 1}, {9, 8}, {3, 1}, {5, 1}};
    for (int t = 0; t < 500; ++t) {
        std::vector<ScaledInterval> arcs;
        std::vector<std::pair<Rational, Rational>> ref;
        int n = 1 + static_cast<int>(rng() % 8);
        for (int i = 0; i < n; ++i) {
            int j = 2 + static_cast<int>(rng() % 9);
            DyadicInterval I{j, static_cast<std::int64_t>(rng() % (1u << j))};
            Factor c = fs[rng() % 4];
            auto A = c == Factor{1, 1} ? to_arc(I) : dilate(I, c);
            arcs.push_back(A);
            ref.push_back(ends(A));
        }
        CHECK(union_measure(arcs) == oracle_union(ref));
        CHECK(ticks_to_rational(union_ticks(arcs), S) == oracle_union(ref));
    }
}

TEST_CASE("2-d union measure against a fine lattice count") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 100; ++t) {
        std::vector<ScaledBox> boxes;
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<DyadicCube> cubes;
        for (int i = 0; i < n; ++i) {
            int j = 1 + static_cast<int>(rng() % 4);
            DyadicCube Q{j, {static_cast<std::int64_t>(rng() % (1u << j)), static_cast<std::int64_t>(rng() % (1u << j))}};
            cubes.push_back(Q);
            boxes.push_back(dilate(Q, Factor{3, 1}));
        }
        // Count lattice cells of side 1/64 covered by some 3Q; the 3Q edges lie on that lattice.
        const int M = 64;
        long covered = 0;
        for (int x = 0; x < M; ++x)
            for (int y = 0; y < M; ++y) {
                bool in = false;
                for (const auto& Q : cubes) {
                    long L = M >> Q.level;
                    auto hit = [&](long v, long idx) {
                        long lo = idx * L - L;
                        long dd = ((v - lo) % M + M) % M;
                        return dd < 3 * L;
                    };
                    if (hit(x, Q.index[0]) && hit(y, Q.index[1])) in = true;
                }
                covered += in;
            }
        CHECK(union_measure(boxes) == Rational(covered, M * M));
    }
}

TEST_CASE("box touching uses every axis projection") {
    DyadicCube a{2, {0, 0}}, b{2, {1, 2}};
    CHECK_FALSE(boxes_touch(to_box(a), to_box(b)));
    DyadicCube c{2, {1, 1}};
    CHECK(boxes_touch(to_box(a), to_box(c)));
    CHECK(adjacent(a, c));
}
