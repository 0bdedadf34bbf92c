#include "strongmeans/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "strongmeans/errors.hpp"
#include "strongmeans/spectral.hpp"

namespace sm {

namespace {

constexpr double pi = std::numbers::pi;

void require_canonical(double x) {
    if (!(std::fabs(x) <= 0.5)) throw PreconditionError("kernel argument must satisfy |x| <= 1/2");
}

void require_decay(double s) {
    if (!(s > 1)) throw PreconditionError("Q_N needs s > 1: its L1 norm is unbounded otherwise");
}

double fejer_sum(long M, double x) {
    const double den = std::sin(pi * x);
    if (std::fabs(den) < 1e-300) return static_cast<double>(M);
    const double r = std::sin(pi * static_cast<double>(M) * x) / den;
    return r * r / static_cast<double>(M);
}

}  // namespace

double dirichlet(long n, double x) {
    const double den = std::sin(pi * x);
    if (std::fabs(den) < 1e-300) return static_cast<double>(2 * n + 1);
    return std::sin(pi * static_cast<double>(2 * n + 1) * x) / den;
}

double fejer_bound(long N, double x) {
    require_canonical(x);
    const double Nd = static_cast<double>(N);
    const double a = std::fabs(x);
    return a * Nd <= 1 ? Nd : 1.0 / (Nd * a * a);
}

double decay_kernel(long N, double s, double x) {
    require_decay(s);
    require_canonical(x);
    const double Nd = static_cast<double>(N);
    const double a = std::fabs(x);
    return a * Nd <= 1 ? Nd : std::pow(Nd, 1 - s) * std::pow(a, -s);
}

double box_kernel(long N, double x) {
    require_canonical(x);
    const double Nd = static_cast<double>(N);
    return std::fabs(x) <= 0.5 / Nd ? 1.0 / Nd : 0.0;
}

double vp_kernel(long N, double x) { return 2.0 * fejer_sum(2 * N, x) - fejer_sum(N, x); }

double product_kernel(long N, const std::vector<double>& x) {
    double v = 1;
    for (double xi : x) v *= fejer_bound(N, xi);
    return v;
}

double kernel_eval(Kernel k, long N, double s, double x) {
    switch (k) {
        case Kernel::Dirichlet: return dirichlet(N, x);
        case Kernel::Fejer: return fejer_bound(N, x);
        case Kernel::Decay: return decay_kernel(N, s, x);
        case Kernel::Box: return box_kernel(N, x);
        case Kernel::ValleePoussin: return vp_kernel(N, x);
    }
    return 0;
}

double kernel_primitive(Kernel k, long N, double s, double x) {
    const double Nd = static_cast<double>(N);
    const double t = Nd * x;
    switch (k) {
        case Kernel::Fejer: return t <= 1 ? t : 2.0 - 1.0 / t;
        case Kernel::Decay:
            require_decay(s);
            return t <= 1 ? t : 1.0 + (1.0 - std::pow(t, 1 - s)) / (s - 1);
        case Kernel::Box: return std::min(x, 0.5 / Nd) / Nd;
        default: throw PreconditionError("no closed-form primitive for this kernel");
    }
}

double kernel_l1(Kernel k, long N, double s) {
    switch (k) {
        case Kernel::Fejer:
        case Kernel::Decay:
        case Kernel::Box: return 2.0 * kernel_primitive(k, N, s, 0.5);
        default: throw PreconditionError("no closed-form L1 norm for this kernel");
    }
}

std::vector<double> kernel_cell_masses(Kernel k, long N, double s, std::size_t M) {
    auto P = [&](double x) { return x >= 0 ? kernel_primitive(k, N, s, x) : -kernel_primitive(k, N, s, -x); };
    const double h = 1.0 / static_cast<double>(M);
    std::vector<double> out(M);
    const long Ml = static_cast<long>(M);
    for (long i = 0; i < Ml; ++i) {
        const long off = i < Ml / 2 ? i : i - Ml;
        double a = (static_cast<double>(off) - 0.5) * h, b = (static_cast<double>(off) + 0.5) * h;
        if (a < -0.5)
            out[static_cast<std::size_t>(i)] = (P(b) - P(-0.5)) + (P(0.5) - P(a + 1.0));
        else
            out[static_cast<std::size_t>(i)] = P(b) - P(a);
    }
    return out;
}

std::vector<double> circular_convolve(const std::vector<double>& h, const std::vector<double>& masses) {
    const std::size_t M = h.size();
    if (masses.size() != M) throw PreconditionError("circular_convolve: size mismatch");
    std::vector<cplx> a(h.begin(), h.end()), b(masses.begin(), masses.end());
    fft_inplace(a, 1, M, -1);
    fft_inplace(b, 1, M, -1);
    for (std::size_t i = 0; i < M; ++i) a[i] *= b[i];
    fft_inplace(a, 1, M, +1);
    std::vector<double> out(M);
    for (std::size_t i = 0; i < M; ++i) out[i] = a[i].real() / static_cast<double>(M);
    return out;
}

}  // namespace sm
