#pragma once

#include <vector>

#include "strongmeans/spectral.hpp"

namespace sm {

// Per-n weighted moments sum_c w_c |S_n f(c)|^p on the refined grid, n = 1..n_max.
// Result [set][n-1], one row per weight vector. OpenMP over n.
std::vector<std::vector<double>> partial_sum_moments(const SpectralFunction& F,
                                                     const std::vector<std::vector<double>>& weights, long n_max,
                                                     double p, int refine = kRefine);

// Rectangular sums on T^2: [set][(n1-1)*n_max + (n2-1)], n1, n2 = 1..n_max. OpenMP over n2.
std::vector<std::vector<double>> rect_moments(const SpectralFunction& F,
                                              const std::vector<std::vector<double>>& weights, long n_max,
                                              double p, int refine = kRefine);

struct StrongMeanFields {
    std::vector<long> Ns;
    std::vector<std::vector<double>> dev;  // (1/N) sum_{n<=N} |S_n f - f|^r
    std::vector<std::vector<double>> amp;  // (1/N) sum_{n<=N} |S_n f|^2
};

// f_ref: f on the refined grid. OpenMP over grid points.
StrongMeanFields strong_mean_fields(const SpectralFunction& F, const std::vector<cplx>& f_ref,
                                    const std::vector<long>& Ns, double r, int refine = kRefine);

namespace serial {

std::vector<std::vector<double>> partial_sum_moments(const SpectralFunction& F,
                                                     const std::vector<std::vector<double>>& weights, long n_max,
                                                     double p, int refine = kRefine);
std::vector<std::vector<double>> rect_moments(const SpectralFunction& F,
                                              const std::vector<std::vector<double>>& weights, long n_max,
                                              double p, int refine = kRefine);
StrongMeanFields strong_mean_fields(const SpectralFunction& F, const std::vector<cplx>& f_ref,
                                    const std::vector<long>& Ns, double r, int refine = kRefine);

}  // namespace serial

}  // namespace sm
