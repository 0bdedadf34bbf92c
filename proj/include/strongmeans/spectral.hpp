#pragma once

#include <vector>

#include "strongmeans/grid.hpp"

namespace sm {

// Quadrature grids are 2^kRefine times finer than the sample grid.
inline constexpr int kRefine = 2;

// DFT coefficients in FFT storage order. The single Nyquist bin m = -2^(J-1)
// also serves m = +2^(J-1).
struct SpectralFunction {
    int d = 1;
    int J = 0;
    std::vector<cplx> coeffs;

    long half() const { return 1L << (J - 1); }
    std::size_t side() const { return std::size_t{1} << J; }
    std::size_t slot(long m) const;
    cplx at(long m) const;
    cplx at(long m1, long m2) const;
};

void fft_inplace(std::vector<cplx>& data, int d, std::size_t side, int sign);

SpectralFunction forward(const GridFunction& f);
GridFunction inverse(const SpectralFunction& F);

// Spectral truncation to |m| <= n, synthesized on the 2^(J+refine) grid.
GridFunction partial_sum(const SpectralFunction& F, long n, int refine = kRefine);
GridFunction partial_sum(const GridFunction& f, long n, int refine = kRefine);
GridFunction partial_sum_rect(const SpectralFunction& F, long n1, long n2, int refine = kRefine);
GridFunction partial_sum_rect(const GridFunction& f, long n1, long n2, int refine = kRefine);

double vp_multiplier(long N, long k);
// Multiplier support 2N-1 must fit in the spectrum.
GridFunction valle_poussin(const GridFunction& f, long N);
SpectralFunction valle_poussin(const SpectralFunction& F, long N);

// max |F(m)| over |m| > N (any axis) relative to max |F(m)|.
double out_of_band(const SpectralFunction& F, long N);

}  // namespace sm
