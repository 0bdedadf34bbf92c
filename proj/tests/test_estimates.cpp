#include <doctest.h>

#include <cmath>

#include "strongmeans/corpus.hpp"
#include "strongmeans/errors.hpp"
#include "strongmeans/estimates.hpp"
#include "strongmeans/kernels.hpp"
#include "strongmeans/spectral.hpp"

using namespace sm;

namespace {

CZDecomposition fake_cz(std::vector<DyadicInterval> cells) {
    CZDecomposition cz;
    cz.lambda = 1;
    cz.d = 1;
    cz.J = 12;
    for (const auto& I : cells) cz.bad.push_back(DyadicCube{I.level, {I.index}});
    return cz;
}

// Is x in c*I on the torus, I = [k 2^-j, (k+1) 2^-j)?
bool in_dilate(double x, const DyadicCube& q, int c) {
    const double L = std::ldexp(1.0, -q.level);
    const double lo = static_cast<double>(q.index[0]) * L - (c - 1) * L / 2;
    double t = x - lo;
    t -= std::floor(t);
    return c * L >= 1.0 || t < c * L;
}

// Integrate |g|^p over T \ E with 16 sub-samples per quadrature cell, g piecewise constant.
double dense_oracle(const GridFunction& g, const CZDecomposition& cz, int c, double p) {
    const std::size_t M = g.side(), sub = 16;
    double acc = 0;
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t s = 0; s < sub; ++s) {
            const double x = (static_cast<double>(i) + (static_cast<double>(s) + 0.5) / sub) / static_cast<double>(M);
            bool in = false;
            for (const auto& q : cz.bad) in = in || in_dilate(x, q, c);
            if (!in) acc += std::pow(std::abs(g.samples[i]), p);
        }
    return acc / static_cast<double>(M * sub);
}

}  // namespace

TEST_CASE("exceptional set examples") {
    auto E = build_exceptional_set(fake_cz({{3, 0}}), 5);
    CHECK(E.measure() == Rational(5, 8));
    auto empty = build_exceptional_set(fake_cz({}), 5);
    CHECK(empty.boxes.empty());
    CHECK(empty.measure() == 0);
    auto two = build_exceptional_set(fake_cz({{4, 0}, {4, 8}}), 5);
    // [-1/8, 3/16) and [3/8, 11/16) counted on the 1/16 lattice
    long covered = 0;
    for (int t = 0; t < 16; ++t) {
        const double x = (t + 0.5) / 16.0;
        covered += in_dilate(x, DyadicCube{4, {0}}, 5) ||
                   in_dilate(x, DyadicCube{4, {8}}, 5);
    }
    CHECK(two.measure() == Rational(covered, 16));
    CHECK(two.measure() == Rational(5, 8));
    CHECK_THROWS_AS(build_exceptional_set(fake_cz({{3, 0}}), 4), InvalidFactor);
}

TEST_CASE("cube exceptional sets are bounded with the factor raised to the dimension") {
    auto f = spike(7, 2);
    auto cz = decompose(f, 16.0);
    auto E = build_exceptional_set(cz, 5);
    CHECK(E.measure() == Rational(25, 64));
    CHECK(measure_bound_holds(E, f.l1()));
    CHECK(E.measure() > Rational(5, 16));
}

TEST_CASE("weighted moment examples") {
    auto one = constant(1, 8, 1.0);
    CHECK(weighted_moment(one, build_exceptional_set(fake_cz({}), 5), 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(weighted_moment(one, build_exceptional_set(fake_cz({{3, 0}}), 5), 2) == doctest::Approx(0.375).epsilon(1e-15));
}

TEST_CASE("complement weights against a 16x oversampled oracle") {
    auto f = spike(10);
    auto cz = decompose(f, 8.0);
    auto E = build_exceptional_set(cz, 5);
    CHECK(E.measure() == Rational(5, 16));
    auto F = forward(f);
    for (long n : {3L, 40L, 300L}) {
        auto g = partial_sum(F, n);
        const double v = weighted_moment(g, E, 2);
        CHECK(std::abs(v - dense_oracle(g, cz, 5, 2)) <= 1e-6 * v);
    }
    auto corpus = make_corpus({"multispike", "noise"}, 9, 2, 4);
    for (const auto& nf : corpus) {
        auto czn = decompose(nf.f, 4.0);
        for (int c : {1, 3, 5}) {
            auto En = build_exceptional_set(czn, c);
            auto g = partial_sum(nf.f, 50);
            const double v = weighted_moment(g, En, 2);
            CHECK(std::abs(v - dense_oracle(g, czn, c, 2)) <= 1e-6 * std::max(v, 1e-12));
        }
    }
}

TEST_CASE("2-d complement weights sum to the complement measure") {
    auto corpus = make_corpus({"tensor_multispike", "tensor_spike"}, 6, 2, 7);
    for (const auto& nf : corpus) {
        auto E = build_exceptional_set(decompose(nf.f, 8.0), 5);
        auto w = complement_weights(E, 8);
        double s = 0;
        for (double v : w) s += v;
        CHECK(s == doctest::Approx(1.0 - static_cast<double>(E.measure())).epsilon(1e-12));
    }
}

TEST_CASE("first reduction examples and corpus sweep") {
    auto r1 = verify_first_reduction(constant(1, 10, 1.0), 2.0);
    CHECK(r1.avg_moment == doctest::Approx(1.0));
    CHECK(r1.pass);
    auto r2 = verify_first_reduction(spike(12), 4.0);
    CHECK(r2.avg_moment == 0.0);
    CHECK(r2.pass);
    auto corpus = make_corpus({"spike", "multispike", "trig", "noise"}, 12, 2, 8);
    for (const auto& nf : corpus)
        for (double lam : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
            auto r = verify_first_reduction(nf.f, lam);
            CHECK(r.pass);
            CHECK(r.measure_ok);
        }
}

TEST_CASE("second reduction on smoothed inputs") {
    auto r1 = verify_second_reduction(constant(1, 10, 1.0), 2.0, 16);
    CHECK(std::isfinite(r1.ratio));
    auto v = valle_poussin(spike(12), 64);
    if (v.l1() < 8.0) {
        auto r = verify_second_reduction(v, 8.0, 128);
        CHECK(std::isfinite(r.ratio));
        CHECK(r.ratio >= 0);
    }
    CHECK_THROWS_AS(verify_second_reduction(spike(10), 8.0, 16), NotBandLimited);
}

TEST_CASE("decay kernel moment of a constant is the kernel mass") {
    for (double s : {1.5, 2.0, 3.0}) {
        auto r = verify_decay_kernel(constant(1, 10, 1.0), 2.0, 64, s);
        CHECK(r.avg_moment == doctest::Approx(kernel_l1(Kernel::Decay, 64, s)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(verify_decay_kernel(constant(1, 10, 1.0), 2.0, 64, 1.0), PreconditionError);
}

TEST_CASE("averaged moment closed forms") {
    auto one = averaged_moment(constant(1, 10, 1.0), 2.0, {4, 64, 512});
    for (const auto& r : one) {
        CHECK(r.avg_moment == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.measure_E == 0);
    }
    auto sp = averaged_moment(spike(10), 8.0, {4, 64, 512});
    for (const auto& r : sp) {
        CHECK(std::abs(r.full_avg - static_cast<double>(r.N + 2)) < 1e-9);
        CHECK(r.avg_moment < r.full_avg);
        CHECK(r.measure_E == Rational(5, 16));
    }
    CHECK_THROWS_AS(averaged_moment(spike(8), 8.0, {256}), AliasingError);
}

TEST_CASE("rectangular averaged moment closed forms") {
    GridFunction c2(2, 5);
    for (auto& v : c2.samples) v = 1.0;
    for (const auto& r : averaged_moment_rect(c2, 2.0, {2, 8})) CHECK(r.avg_moment == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& r : averaged_moment_rect(spike(5, 2), 16.0, {4, 16})) {
        const double n2 = static_cast<double>(r.N + 2);
        CHECK(std::abs(r.full_avg - n2 * n2) < 1e-6);
    }
}

TEST_CASE("strong means of a constant and of a trigonometric polynomial") {
    auto zero = strong_means_measure(constant(1, 8, 1.0), {0.5, 0.25}, {4, 16, 64});
    for (const auto& row : zero.level_measure)
        for (double m : row) CHECK(m == 0.0);
    for (double d : zero.max_dev) CHECK(d < 1e-20);

    const long deg = 5;
    auto f = random_trig(12, 9, deg);
    std::vector<long> Ns = {2, 4, 8, 16, 32, 64, 128, 256};
    auto r = strong_means_measure(f, {0.25}, Ns);
    const auto& lm = r.level_measure[0];
    for (std::size_t k = 1; k < Ns.size(); ++k)
        if (Ns[k - 1] > deg) CHECK(lm[k] <= lm[k - 1]);
    CHECK(lm.back() == 0.0);
}
