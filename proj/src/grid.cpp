#include "strongmeans/grid.hpp"

#include <algorithm>
#include <cmath>

namespace sm {

double GridFunction::cell_measure() const { return std::ldexp(1.0, -d * J); }

double GridFunction::l1() const {
    double s = 0;
    for (const auto& v : samples) s += std::abs(v);
    return s * cell_measure();
}

double GridFunction::l2sq() const {
    double s = 0;
    for (const auto& v : samples) s += std::norm(v);
    return s * cell_measure();
}

double GridFunction::linf() const {
    double m = 0;
    for (const auto& v : samples) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> GridFunction::abs_values() const {
    std::vector<double> a(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) a[i] = std::abs(samples[i]);
    return a;
}

GridFunction constant(int d, int J, double value) {
    GridFunction f(d, J);
    std::fill(f.samples.begin(), f.samples.end(), cplx(value, 0));
    return f;
}

GridFunction refine_piecewise(const GridFunction& f, int r) {
    GridFunction g(f.d, f.J + r);
    const std::size_t n = f.side(), m = g.side();
    if (f.d == 1) {
        for (std::size_t i = 0; i < m; ++i) g.samples[i] = f.samples[i >> r];
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) g.samples[i * m + j] = f.samples[(i >> r) * n + (j >> r)];
    }
    return g;
}

}  // namespace sm
