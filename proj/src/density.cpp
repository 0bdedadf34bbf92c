#include "strongmeans/density.hpp"

#include <algorithm>
#include <cmath>

#include "strongmeans/errors.hpp"

namespace sm {

namespace {

// Max-norm of the lattice point at flat index i.
long max_coord(std::uint64_t i, int d, long n_max) {
    long m = 0;
    for (int a = 0; a < d; ++a) {
        m = std::max(m, static_cast<long>(i % static_cast<std::uint64_t>(n_max)) + 1);
        i /= static_cast<std::uint64_t>(n_max);
    }
    return m;
}

double cube_mean_square(const std::vector<double>& values, int d, long n_max, double s, long N) {
    double acc = 0;
    if (d == 1) {
        for (long i = 0; i < N; ++i) acc += (values[static_cast<std::size_t>(i)] - s) * (values[static_cast<std::size_t>(i)] - s);
        return acc / static_cast<double>(N);
    }
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            const double v = values[static_cast<std::size_t>(i * n_max + j)] - s;
            acc += v * v;
        }
    return acc / (static_cast<double>(N) * static_cast<double>(N));
}

}  // namespace

DensityRun density_subsequence(const std::vector<double>& values, int d, long n_max, double s,
                               const std::vector<long>& schedule, const std::vector<long>& curve_points) {
    if (d != 1 && d != 2) throw PreconditionError("density_subsequence supports d = 1, 2");
    const std::uint64_t total = d == 1 ? static_cast<std::uint64_t>(n_max)
                                       : static_cast<std::uint64_t>(n_max) * static_cast<std::uint64_t>(n_max);
    if (values.size() != total) throw PreconditionError("lattice size mismatch");
    DensityRun run;
    run.d = d;
    run.n_max = n_max;
    run.s = s;
    for (long N : schedule)
        if (N >= 1 && N <= n_max) run.schedule.push_back(N);
    if (run.schedule.empty()) throw ScheduleInfeasible("no schedule point inside the lattice");
    for (long N : run.schedule) run.mean_square.push_back(cube_mean_square(values, d, n_max, s, N));

    int prev = -1;
    for (int m = 1;; ++m) {
        const double thr = 1.0 / (static_cast<double>(m) * m * m);
        int found = -1;
        for (int k = prev + 1; k < static_cast<int>(run.schedule.size()); ++k)
            if (run.mean_square[static_cast<std::size_t>(k)] < thr) {
                found = k;
                break;
            }
        if (found < 0) break;
        run.k_m.push_back(found);
        prev = found;
    }
    if (run.k_m.empty()) throw ScheduleInfeasible("no schedule point meets the m^-3 mean-square criterion");

    // shell m covers max-norm in (N_{k_m}, N_{k_{m+1}}]; the last shell runs to n_max
    std::vector<long> lower, upper;
    for (std::size_t m = 0; m < run.k_m.size(); ++m) {
        lower.push_back(run.schedule[static_cast<std::size_t>(run.k_m[m])]);
        upper.push_back(m + 1 < run.k_m.size() ? run.schedule[static_cast<std::size_t>(run.k_m[m + 1])] : n_max);
    }
    auto shell_of = [&](long mc) -> int {
        for (std::size_t m = 0; m < lower.size(); ++m)
            if (mc > lower[m] && mc <= upper[m]) return static_cast<int>(m);
        return -1;
    };
    for (std::uint64_t i = 0; i < total; ++i) {
        const int m = shell_of(max_coord(i, d, n_max));
        if (m < 0) continue;
        if (std::fabs(values[i] - s) < 1.0 / static_cast<double>(m + 1)) run.members.push_back(i);
    }
    for (std::uint64_t i : run.members) {
        ++run.checked;
        const int m = shell_of(max_coord(i, d, n_max));
        if (m < 0 || !(std::fabs(values[i] - s) < 1.0 / static_cast<double>(m + 1))) ++run.threshold_failures;
    }

    run.curve_N = run.schedule;
    for (long N : curve_points)
        if (N >= 1 && N <= n_max && std::find(run.curve_N.begin(), run.curve_N.end(), N) == run.curve_N.end())
            run.curve_N.push_back(N);
    std::sort(run.curve_N.begin(), run.curve_N.end());
    std::vector<std::uint64_t> counts(run.curve_N.size(), 0);
    for (std::uint64_t i : run.members) {
        const long mc = max_coord(i, d, n_max);
        for (std::size_t c = 0; c < run.curve_N.size(); ++c)
            if (mc <= run.curve_N[c]) ++counts[c];
    }
    for (std::size_t c = 0; c < run.curve_N.size(); ++c)
        run.curve.push_back(static_cast<double>(counts[c]) / std::pow(static_cast<double>(run.curve_N[c]), d));

    for (std::size_t k = 0; k < run.schedule.size(); ++k) {
        int ell = 0;
        for (std::size_t m = 0; m < run.k_m.size(); ++m)
            if (run.k_m[m] < static_cast<int>(k)) ell = static_cast<int>(m) + 1;
        if (ell == 0) continue;
        const auto it = std::find(run.curve_N.begin(), run.curve_N.end(), run.schedule[k]);
        const double dens = run.curve[static_cast<std::size_t>(it - run.curve_N.begin())];
        if (dens < 1.0 - 1.0 / ell) run.guarantee_holds = false;
    }
    return run;
}

std::vector<double> power_sequence(int d, long n_max, double s, double exponent) {
    std::vector<double> v;
    if (d == 1) {
        v.resize(static_cast<std::size_t>(n_max));
        for (long n = 1; n <= n_max; ++n) v[static_cast<std::size_t>(n - 1)] = s + std::pow(static_cast<double>(n), exponent);
        return v;
    }
    v.resize(static_cast<std::size_t>(n_max * n_max));
    for (long a = 1; a <= n_max; ++a)
        for (long b = 1; b <= n_max; ++b) {
            const double r = std::hypot(static_cast<double>(a), static_cast<double>(b));
            v[static_cast<std::size_t>((a - 1) * n_max + (b - 1))] = s + std::pow(r, exponent);
        }
    return v;
}

}  // namespace sm
