#pragma once

#include <cstdint>
#include <vector>

namespace sm {

struct DensityRun {
    int d = 1;
    long n_max = 0;
    double s = 0;
    std::vector<long> schedule;
    std::vector<double> mean_square;  // per schedule point
    std::vector<int> k_m;             // selected schedule positions, m = 1, 2, ...
    std::vector<std::uint64_t> members;  // flat lattice indices in S, increasing
    std::vector<long> curve_N;
    std::vector<double> curve;
    std::uint64_t checked = 0;
    std::uint64_t threshold_failures = 0;
    bool guarantee_holds = true;
};

// values: lattice [1, n_max]^d, flat row-major with axis 0 slowest; value of n = (n_1..n_d) at
// sum (n_i - 1) n_max^(d-1-i).
DensityRun density_subsequence(const std::vector<double>& values, int d, long n_max, double s,
                               const std::vector<long>& schedule, const std::vector<long>& curve_points = {});

std::vector<double> power_sequence(int d, long n_max, double s, double exponent);

}  // namespace sm
