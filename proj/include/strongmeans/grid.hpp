#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace sm {

using cplx = std::complex<double>;

// Samples on the uniform 2^J grid per axis, row-major with axis 0 slowest.
// Read as a piecewise-constant density for integration.
struct GridFunction {
    int d = 1;
    int J = 0;
    std::vector<cplx> samples;

    GridFunction() = default;
    GridFunction(int dim, int j) : d(dim), J(j), samples(std::size_t{1} << (dim * j)) {}

    std::size_t side() const { return std::size_t{1} << J; }
    std::size_t size() const { return samples.size(); }
    double cell_measure() const;
    double l1() const;
    double l2sq() const;
    double linf() const;
    std::vector<double> abs_values() const;
};

GridFunction constant(int d, int J, double value);

// Grid function whose samples are the same piecewise-constant density read at level J+r.
GridFunction refine_piecewise(const GridFunction& f, int r);

}  // namespace sm
