#include <doctest.h>

#include <cmath>
#include <numbers>
#include <algorithm>
#include <random>
#include <vector>

#include "strongmeans/errors.hpp"
#include "strongmeans/kernels.hpp"
#include "strongmeans/spectral.hpp"

using namespace sm;

namespace {

// Composite midpoint rule on [a, b].
template <class F>
double midpoint(F f, double a, double b, long n) {
    const double h = (b - a) / static_cast<double>(n);
    double s = 0;
    for (long i = 0; i < n; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
    return s * h;
}

}  // namespace

TEST_CASE("Dirichlet kernel values") {
    for (long n : {0L, 1L, 5L, 64L}) CHECK(dirichlet(n, 0.0) == static_cast<double>(2 * n + 1));
    for (double x : {0.01, 0.13, 0.37}) {
        double direct = 0;
        for (long m = -6; m <= 6; ++m) direct += std::cos(2 * std::numbers::pi * static_cast<double>(m) * x);
        CHECK(dirichlet(6, x) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("Fejer bound L1 norm") {
    for (long N : {2L, 8L, 64L, 1024L}) {
        CHECK(kernel_l1(Kernel::Fejer, N, 0) == doctest::Approx(4.0 - 4.0 / static_cast<double>(N)).epsilon(1e-14));
        // Riemann sum with N-independent resolution per unit of N x
        const long M = 200 * N;
        double r = 0;
        for (long i = 0; i < M; ++i) r += fejer_bound(N, -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(M));
        r /= static_cast<double>(M);
        CHECK(std::abs(r / (4.0 - 4.0 / static_cast<double>(N)) - 1.0) < 0.02);
    }
}

TEST_CASE("box kernel mass by direct integration") {
    for (long N : {1L, 4L, 16L, 100L}) {
        const double half = 0.5 / static_cast<double>(N);
        double direct = midpoint([&](double x) { return box_kernel(N, x); }, -half, half, 1000);
        CHECK(kernel_l1(Kernel::Box, N, 0) == doctest::Approx(direct).epsilon(1e-12));
        CHECK(direct == doctest::Approx(1.0 / static_cast<double>(N * N)).epsilon(1e-12));
        if (N > 1) CHECK(box_kernel(N, 1.5 * half) == 0.0);
    }
}

TEST_CASE("decay kernel rejects s <= 1 and integrates to its primitive") {
    CHECK_THROWS_AS(decay_kernel(8, 1.0, 0.1), PreconditionError);
    CHECK_THROWS_AS(decay_kernel(8, 0.5, 0.1), PreconditionError);
    for (double s : {1.5, 2.0, 3.0})
        for (long N : {4L, 32L}) {
            double direct = 2 * (midpoint([&](double x) { return decay_kernel(N, s, x); }, 0.0, 1.0 / static_cast<double>(N), 2000) +
                                 midpoint([&](double x) { return decay_kernel(N, s, x); }, 1.0 / static_cast<double>(N), 0.5, 200000));
            CHECK(kernel_l1(Kernel::Decay, N, s) == doctest::Approx(direct).epsilon(1e-6));
        }
    CHECK(decay_kernel(16, 2.0, 0.0) == 16.0);
    CHECK(decay_kernel(16, 2.0, 0.25) == doctest::Approx(1.0 / 16.0 * 16.0));
}

TEST_CASE("de la Vallee Poussin kernel has the trapezoid multiplier and bounded L1 norm") {
    for (long N : {8L, 32L, 128L, 512L}) {
        const long M = 64 * N;
        double l1 = 0;
        for (long i = 0; i < M; ++i) l1 += std::abs(vp_kernel(N, -0.5 + (static_cast<double>(i) + 0.5) / static_cast<double>(M)));
        l1 /= static_cast<double>(M);
        CHECK(l1 <= 3.0);
        CHECK(l1 >= 1.0);
    }
    const long N = 8, M = 256;
    for (long k : {0L, 5L, 8L, 12L, 15L, 16L, 20L}) {
        double c = 0;
        for (long i = 0; i < M; ++i) {
            double x = static_cast<double>(i) / static_cast<double>(M);
            c += vp_kernel(N, x) * std::cos(2 * std::numbers::pi * static_cast<double>(k) * x);
        }
        CHECK(std::abs(c / static_cast<double>(M) - vp_multiplier(N, k)) < 1e-12);
    }
}

TEST_CASE("product kernel is the product of axis kernels") {
    CHECK(product_kernel(8, {0.0, 0.25}) == doctest::Approx(fejer_bound(8, 0.0) * fejer_bound(8, 0.25)));
}

TEST_CASE("cell masses match numerical integration and sum to the L1 norm") {
    const std::size_t M = 256;
    for (auto k : {Kernel::Fejer, Kernel::Decay, Kernel::Box}) {
        const long N = 16;
        const double s = 1.5;
        auto m = kernel_cell_masses(k, N, s, M);
        double total = 0;
        for (double v : m) total += v;
        CHECK(total == doctest::Approx(kernel_l1(k, N, s)).epsilon(1e-12));
        for (std::size_t i : {std::size_t{0}, std::size_t{3}, std::size_t{40}, std::size_t{200}}) {
            long off = i < M / 2 ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(M);
            double a = (static_cast<double>(off) - 0.5) / static_cast<double>(M);
            auto f = [&](double x) { return kernel_eval(k, N, s, x); };
            double direct = 0;
            // split at the kernel corners so the midpoint rule converges
            const double corner = k == Kernel::Box ? 0.5 / N : 1.0 / N;
            double pts[] = {a, a + 1.0 / static_cast<double>(M)};
            double lo = pts[0], hi = pts[1];
            std::vector<double> cuts = {lo};
            for (double c : {-corner, corner})
                if (c > lo && c < hi) cuts.push_back(c);
            cuts.push_back(hi);
            std::sort(cuts.begin(), cuts.end());
            for (std::size_t q = 0; q + 1 < cuts.size(); ++q) direct += midpoint(f, cuts[q], cuts[q + 1], 20000);
            CHECK(m[i] == doctest::Approx(direct).epsilon(1e-7));
        }
    }
}

TEST_CASE("circular convolution matches the direct sum") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0, 1);
    const std::size_t M = 64;
    std::vector<double> h(M), w(M);
    for (auto& v : h) v = u(rng);
    for (auto& v : w) v = u(rng);
    auto out = circular_convolve(h, w);
    for (std::size_t i = 0; i < M; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < M; ++j) s += h[j] * w[(i + M - j) % M];
        CHECK(out[i] == doctest::Approx(s).epsilon(1e-12));
    }
}
