#include "strongmeans/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "strongmeans/errors.hpp"

namespace sm {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(int d, std::size_t side, int sign) {
    static std::map<std::tuple<int, std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_tuple(d, side, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const std::size_t total = d == 1 ? side : side * side;
    auto* buf = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = d == 1 ? fftw_plan_dft_1d(static_cast<int>(side), buf, buf, sign, flags)
                         : fftw_plan_dft_2d(static_cast<int>(side), static_cast<int>(side), buf, buf, sign, flags);
    fftw_free(buf);
    cache.emplace(key, p);
    return p;
}

void require_band(long n, long half) {
    if (n < 0) throw AliasingError("negative truncation index");
    if (n > half) throw AliasingError("truncation index exceeds the grid's spectrum");
}

// Place coefficients |m| <= n of axis-slot form into a refined array.
std::size_t refined_slot(long m, std::size_t M) {
    const long Ml = static_cast<long>(M);
    return static_cast<std::size_t>(((m % Ml) + Ml) % Ml);
}

}  // namespace

std::size_t SpectralFunction::slot(long m) const {
    const long n = static_cast<long>(side());
    if (m == half()) m = -half();
    if (m < -half() || m > half()) throw AliasingError("frequency outside the grid spectrum");
    return static_cast<std::size_t>((m + n) % n);
}

cplx SpectralFunction::at(long m) const { return coeffs[slot(m)]; }

cplx SpectralFunction::at(long m1, long m2) const { return coeffs[slot(m1) * side() + slot(m2)]; }

void fft_inplace(std::vector<cplx>& data, int d, std::size_t side, int sign) {
    fftw_plan p = get_plan(d, side, sign);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, ptr, ptr);
}

SpectralFunction forward(const GridFunction& f) {
    SpectralFunction F{f.d, f.J, f.samples};
    fft_inplace(F.coeffs, f.d, f.side(), FFTW_FORWARD);
    const double s = f.cell_measure();
    for (auto& c : F.coeffs) c *= s;
    return F;
}

GridFunction inverse(const SpectralFunction& F) {
    GridFunction f(F.d, F.J);
    f.samples = F.coeffs;
    fft_inplace(f.samples, F.d, F.side(), FFTW_BACKWARD);
    return f;
}

GridFunction partial_sum(const SpectralFunction& F, long n, int refine) {
    if (F.d != 1) throw PreconditionError("partial_sum expects d = 1");
    require_band(n, F.half());
    GridFunction g(1, F.J + refine);
    const std::size_t M = g.side();
    for (long m = -n; m <= n; ++m) g.samples[refined_slot(m, M)] = F.at(m);
    fft_inplace(g.samples, 1, M, FFTW_BACKWARD);
    return g;
}

GridFunction partial_sum(const GridFunction& f, long n, int refine) { return partial_sum(forward(f), n, refine); }

GridFunction partial_sum_rect(const SpectralFunction& F, long n1, long n2, int refine) {
    if (F.d != 2) throw PreconditionError("partial_sum_rect expects d = 2");
    require_band(n1, F.half());
    require_band(n2, F.half());
    GridFunction g(2, F.J + refine);
    const std::size_t M = g.side();
    for (long a = -n1; a <= n1; ++a)
        for (long b = -n2; b <= n2; ++b) g.samples[refined_slot(a, M) * M + refined_slot(b, M)] = F.at(a, b);
    fft_inplace(g.samples, 2, M, FFTW_BACKWARD);
    return g;
}

GridFunction partial_sum_rect(const GridFunction& f, long n1, long n2, int refine) {
    return partial_sum_rect(forward(f), n1, n2, refine);
}

double vp_multiplier(long N, long k) {
    const long a = std::labs(k);
    if (a <= N) return 1.0;
    if (a <= 2 * N - 1) return static_cast<double>(2 * N - a) / static_cast<double>(N);
    return 0.0;
}

SpectralFunction valle_poussin(const SpectralFunction& F, long N) {
    if (N < 1) throw PreconditionError("valle_poussin: N must be positive");
    if (2 * N - 1 > F.half()) throw AliasingError("de la Vallee Poussin support exceeds the grid spectrum");
    SpectralFunction G = F;
    const long n = static_cast<long>(F.side());
    auto freq = [&](std::size_t s) {
        long m = static_cast<long>(s);
        return m >= n / 2 ? m - n : m;
    };
    if (F.d == 1) {
        for (std::size_t s = 0; s < F.side(); ++s) G.coeffs[s] *= vp_multiplier(N, freq(s));
    } else {
        for (std::size_t a = 0; a < F.side(); ++a)
            for (std::size_t b = 0; b < F.side(); ++b)
                G.coeffs[a * F.side() + b] *= vp_multiplier(N, freq(a)) * vp_multiplier(N, freq(b));
    }
    return G;
}

GridFunction valle_poussin(const GridFunction& f, long N) { return inverse(valle_poussin(forward(f), N)); }

double out_of_band(const SpectralFunction& F, long N) {
    const long n = static_cast<long>(F.side());
    auto freq = [&](std::size_t s) {
        long m = static_cast<long>(s);
        return std::labs(m >= n / 2 ? m - n : m);
    };
    double inside = 0, outside = 0;
    for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
        long m = F.d == 1 ? freq(i) : std::max(freq(i / F.side()), freq(i % F.side()));
        // the Nyquist bin stands for +-half; it is in band only when N >= half
        const double a = std::abs(F.coeffs[i]);
        if (m <= N)
            inside = std::max(inside, a);
        else
            outside = std::max(outside, a);
    }
    const double ref = std::max(inside, outside);
    return ref > 0 ? outside / ref : 0.0;
}

}  // namespace sm
