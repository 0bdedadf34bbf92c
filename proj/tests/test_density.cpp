#include <doctest.h>

#include <cmath>

#include "strongmeans/density.hpp"
#include "strongmeans/errors.hpp"

using namespace sm;

namespace {

std::vector<long> powers(long base, long limit) {
    std::vector<long> out;
    for (long v = 1; v <= limit; v *= base) out.push_back(v);
    return out;
}

}  // namespace

TEST_CASE("constant sequence gives density tending to one") {
    const long n = 1 << 14;
    std::vector<double> v(static_cast<std::size_t>(n), 0.5);
    auto run = density_subsequence(v, 1, n, 0.5, powers(4, n));
    CHECK(run.threshold_failures == 0);
    CHECK(run.curve.back() >= 1.0 - 1.0 / static_cast<double>(n) - 1e-12);
    CHECK(run.members.size() == static_cast<std::size_t>(n - 1));
}

TEST_CASE("mean squares match direct summation") {
    const long n = 100000;
    auto v = power_sequence(1, n, 0.3, -0.25);
    auto sched = powers(4, n);
    auto run = density_subsequence(v, 1, n, 0.3, sched);
    for (std::size_t k = 0; k < run.schedule.size(); ++k) {
        long double acc = 0;
        for (long i = 1; i <= run.schedule[k]; ++i) acc += std::pow(static_cast<long double>(i), -0.5L);
        const double ref = static_cast<double>(acc / run.schedule[k]);
        CHECK(run.mean_square[k] == doctest::Approx(ref).epsilon(1e-9));
        if (run.schedule[k] >= 1024) CHECK(run.mean_square[k] == doctest::Approx(2.0 / std::sqrt(static_cast<double>(run.schedule[k]))).epsilon(0.05));
    }
}

TEST_CASE("emitted indices satisfy their shell threshold and selection is greedy") {
    const long n = 100000;
    auto v = power_sequence(1, n, 0.3, -0.25);
    auto run = density_subsequence(v, 1, n, 0.3, powers(4, n));
    REQUIRE_FALSE(run.k_m.empty());
    // selection rule re-derived
    int prev = -1;
    for (std::size_t m = 0; m < run.k_m.size(); ++m) {
        const double thr = 1.0 / std::pow(static_cast<double>(m + 1), 3);
        int expect = -1;
        for (int k = prev + 1; k < static_cast<int>(run.schedule.size()); ++k)
            if (run.mean_square[static_cast<std::size_t>(k)] < thr) {
                expect = k;
                break;
            }
        CHECK(run.k_m[m] == expect);
        prev = expect;
    }
    // membership recomputed from shells
    std::size_t count = 0;
    for (long i = 1; i <= n; ++i) {
        int shell = -1;
        for (std::size_t m = 0; m < run.k_m.size(); ++m) {
            const long lo = run.schedule[static_cast<std::size_t>(run.k_m[m])];
            const long hi = m + 1 < run.k_m.size() ? run.schedule[static_cast<std::size_t>(run.k_m[m + 1])] : n;
            if (i > lo && i <= hi) shell = static_cast<int>(m);
        }
        if (shell >= 0 && std::fabs(v[static_cast<std::size_t>(i - 1)] - 0.3) < 1.0 / (shell + 1)) ++count;
    }
    CHECK(run.members.size() == count);
    CHECK(run.checked == run.members.size());
    CHECK(run.threshold_failures == 0);
    CHECK(run.guarantee_holds);
}

TEST_CASE("two-dimensional lattice with radial decay") {
    const long n = 300;
    auto v = power_sequence(2, n, 1.0, -0.25);
    auto run = density_subsequence(v, 2, n, 1.0, powers(2, n));
    CHECK(run.threshold_failures == 0);
    for (std::size_t k = 1; k < run.schedule.size(); ++k) {
        long double acc = 0;
        const long N = run.schedule[k];
        for (long a = 1; a <= N; ++a)
            for (long b = 1; b <= N; ++b) acc += 1.0L / std::sqrt(std::hypot(static_cast<long double>(a), static_cast<long double>(b)));
        CHECK(run.mean_square[k] == doctest::Approx(static_cast<double>(acc / (N * N))).epsilon(1e-9));
    }
}

TEST_CASE("infeasible schedule is reported") {
    std::vector<double> v(1000, 5.0);
    CHECK_THROWS_AS(density_subsequence(v, 1, 1000, 0.0, powers(4, 1000)), ScheduleInfeasible);
    CHECK_THROWS_AS(density_subsequence(v, 1, 999, 0.0, powers(4, 1000)), PreconditionError);
}
