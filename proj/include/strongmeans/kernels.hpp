#pragma once

#include <vector>

namespace sm {

enum class Kernel { Dirichlet, Fejer, Decay, Box, ValleePoussin };

double dirichlet(long n, double x);
// K_N(x) = (1/N) min(N^2, x^-2)
double fejer_bound(long N, double x);
// Q_N(x) = N^(1-s) min(N^s, |x|^-s), s > 1
double decay_kernel(long N, double s, double x);
// B_N(x) = (1/N) chi_[-1/2N, 1/2N]
double box_kernel(long N, double x);
// V_N = (1/N) sum_{m=N}^{2N-1} D_m
double vp_kernel(long N, double x);
double product_kernel(long N, const std::vector<double>& x);

double kernel_eval(Kernel k, long N, double s, double x);
// Integral of the kernel over [0, x], x in [0, 1/2]. Fejer, Decay and Box only.
double kernel_primitive(Kernel k, long N, double s, double x);
double kernel_l1(Kernel k, long N, double s);

// Mass of the kernel over the period-M cell centred at offset k/M, k in [0, M).
std::vector<double> kernel_cell_masses(Kernel k, long N, double s, std::size_t M);
// out[i] = sum_j h[j] masses[(i - j) mod M]
std::vector<double> circular_convolve(const std::vector<double>& h, const std::vector<double>& masses);

}  // namespace sm
