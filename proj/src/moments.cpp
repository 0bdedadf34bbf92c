#include "strongmeans/moments.hpp"

#include <cmath>

#include "strongmeans/errors.hpp"

namespace sm {

namespace {

double powabs(cplx z, double p) {
    if (p == 2) return std::norm(z);
    if (p == 4) {
        const double a = std::norm(z);
        return a * a;
    }
    return std::pow(std::abs(z), p);
}

void check_weights(const std::vector<std::vector<double>>& w, std::size_t total) {
    for (const auto& v : w)
        if (v.size() != total) throw PreconditionError("weight vector does not match the quadrature grid");
}

std::size_t wrap(long m, std::size_t M) {
    const long Ml = static_cast<long>(M);
    return static_cast<std::size_t>(((m % Ml) + Ml) % Ml);
}

std::vector<cplx> roots(std::size_t M) {
    std::vector<cplx> w(M);
    for (std::size_t k = 0; k < M; ++k) w[k] = std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(M));
    return w;
}

}  // namespace

std::vector<std::vector<double>> partial_sum_moments(const SpectralFunction& F,
                                                     const std::vector<std::vector<double>>& weights, long n_max,
                                                     double p, int refine) {
    if (F.d != 1) throw PreconditionError("partial_sum_moments expects d = 1");
    if (n_max > F.half()) throw AliasingError("n_max exceeds the grid spectrum");
    const std::size_t M = std::size_t{1} << (F.J + refine);
    check_weights(weights, M);
    std::vector<std::vector<double>> out(weights.size(), std::vector<double>(static_cast<std::size_t>(n_max)));
#pragma omp parallel
    {
        std::vector<cplx> buf(M);
#pragma omp for schedule(dynamic, 8)
        for (long n = 1; n <= n_max; ++n) {
            std::fill(buf.begin(), buf.end(), cplx(0));
            for (long m = -n; m <= n; ++m) buf[wrap(m, M)] = F.at(m);
            fft_inplace(buf, 1, M, +1);
            for (std::size_t s = 0; s < weights.size(); ++s) {
                const auto& w = weights[s];
                double acc = 0;
                for (std::size_t c = 0; c < M; ++c) acc += w[c] * powabs(buf[c], p);
                out[s][static_cast<std::size_t>(n - 1)] = acc;
            }
        }
    }
    return out;
}

std::vector<std::vector<double>> rect_moments(const SpectralFunction& F,
                                              const std::vector<std::vector<double>>& weights, long n_max,
                                              double p, int refine) {
    if (F.d != 2) throw PreconditionError("rect_moments expects d = 2");
    if (n_max > F.half()) throw AliasingError("n_max exceeds the grid spectrum");
    const std::size_t M = std::size_t{1} << (F.J + refine);
    check_weights(weights, M * M);
    const auto w = roots(M);
    const std::size_t nn = static_cast<std::size_t>(n_max);
    std::vector<std::vector<double>> out(weights.size(), std::vector<double>(nn * nn));
    const long nf = 2 * n_max + 1;
#pragma omp parallel
    {
        // T[(m1 + n_max) * M + x2] = sum_{|m2| <= n2} F(m1, m2) e(m2 x2)
        std::vector<cplx> T(static_cast<std::size_t>(nf) * M), S(M * M);
#pragma omp for schedule(dynamic, 1)
        for (long n2 = 1; n2 <= n_max; ++n2) {
            for (long m1 = -n_max; m1 <= n_max; ++m1)
                for (std::size_t x2 = 0; x2 < M; ++x2) {
                    cplx acc = 0;
                    for (long m2 = -n2; m2 <= n2; ++m2) acc += F.at(m1, m2) * w[wrap(m2 * static_cast<long>(x2), M)];
                    T[static_cast<std::size_t>(m1 + n_max) * M + x2] = acc;
                }
            for (std::size_t x1 = 0; x1 < M; ++x1)
                for (std::size_t x2 = 0; x2 < M; ++x2) S[x1 * M + x2] = T[static_cast<std::size_t>(n_max) * M + x2];
            for (long n1 = 1; n1 <= n_max; ++n1) {
                const cplx* tp = &T[static_cast<std::size_t>(n_max + n1) * M];
                const cplx* tm = &T[static_cast<std::size_t>(n_max - n1) * M];
                for (std::size_t x1 = 0; x1 < M; ++x1) {
                    const cplx ep = w[wrap(n1 * static_cast<long>(x1), M)];
                    const cplx em = std::conj(ep);
                    cplx* row = &S[x1 * M];
                    for (std::size_t x2 = 0; x2 < M; ++x2) row[x2] += tp[x2] * ep + tm[x2] * em;
                }
                const std::size_t cell = static_cast<std::size_t>(n1 - 1) * nn + static_cast<std::size_t>(n2 - 1);
                for (std::size_t s = 0; s < weights.size(); ++s) {
                    const auto& ws = weights[s];
                    double acc = 0;
                    for (std::size_t c = 0; c < M * M; ++c) acc += ws[c] * powabs(S[c], p);
                    out[s][cell] = acc;
                }
            }
        }
    }
    return out;
}

StrongMeanFields strong_mean_fields(const SpectralFunction& F, const std::vector<cplx>& f_ref,
                                    const std::vector<long>& Ns, double r, int refine) {
    if (F.d != 1) throw PreconditionError("strong_mean_fields expects d = 1");
    const std::size_t M = std::size_t{1} << (F.J + refine);
    if (f_ref.size() != M) throw PreconditionError("reference samples do not match the quadrature grid");
    long n_max = 0;
    for (long N : Ns) {
        if (N < 1) throw PreconditionError("schedule entries must be positive");
        n_max = std::max(n_max, N);
    }
    if (n_max > F.half()) throw AliasingError("schedule exceeds the grid spectrum");
    const auto w = roots(M);
    StrongMeanFields out;
    out.Ns = Ns;
    out.dev.assign(Ns.size(), std::vector<double>(M));
    out.amp.assign(Ns.size(), std::vector<double>(M));
#pragma omp parallel for schedule(static)
    for (std::size_t x = 0; x < M; ++x) {
        const long xl = static_cast<long>(x);
        cplx S = F.at(0);
        double dev = 0, amp = 0;
        for (long n = 1; n <= n_max; ++n) {
            const cplx ep = w[wrap(n * xl, M)];
            S += F.at(n) * ep + F.at(-n) * std::conj(ep);
            dev += powabs(S - f_ref[x], r);
            amp += std::norm(S);
            for (std::size_t k = 0; k < Ns.size(); ++k)
                if (Ns[k] == n) {
                    out.dev[k][x] = dev / static_cast<double>(n);
                    out.amp[k][x] = amp / static_cast<double>(n);
                }
        }
    }
    return out;
}

namespace serial {

std::vector<std::vector<double>> partial_sum_moments(const SpectralFunction& F,
                                                     const std::vector<std::vector<double>>& weights, long n_max,
                                                     double p, int refine) {
    if (F.d != 1) throw PreconditionError("partial_sum_moments expects d = 1");
    if (n_max > F.half()) throw AliasingError("n_max exceeds the grid spectrum");
    const std::size_t M = std::size_t{1} << (F.J + refine);
    check_weights(weights, M);
    std::vector<std::vector<double>> out(weights.size(), std::vector<double>(static_cast<std::size_t>(n_max)));
    std::vector<cplx> S(M, F.at(0));
    for (long n = 1; n <= n_max; ++n) {
        for (std::size_t x = 0; x < M; ++x) {
            const double t = 2.0 * M_PI * static_cast<double>(n) * static_cast<double>(x) / static_cast<double>(M);
            const cplx ep = std::polar(1.0, t);
            S[x] += F.at(n) * ep + F.at(-n) * std::conj(ep);
        }
        for (std::size_t s = 0; s < weights.size(); ++s) {
            double acc = 0;
            for (std::size_t c = 0; c < M; ++c) acc += weights[s][c] * powabs(S[c], p);
            out[s][static_cast<std::size_t>(n - 1)] = acc;
        }
    }
    return out;
}

std::vector<std::vector<double>> rect_moments(const SpectralFunction& F,
                                              const std::vector<std::vector<double>>& weights, long n_max,
                                              double p, int refine) {
    if (F.d != 2) throw PreconditionError("rect_moments expects d = 2");
    const std::size_t M = std::size_t{1} << (F.J + refine);
    check_weights(weights, M * M);
    const std::size_t nn = static_cast<std::size_t>(n_max);
    std::vector<std::vector<double>> out(weights.size(), std::vector<double>(nn * nn));
    for (long n1 = 1; n1 <= n_max; ++n1)
        for (long n2 = 1; n2 <= n_max; ++n2) {
            const GridFunction g = partial_sum_rect(F, n1, n2, refine);
            const std::size_t cell = static_cast<std::size_t>(n1 - 1) * nn + static_cast<std::size_t>(n2 - 1);
            for (std::size_t s = 0; s < weights.size(); ++s) {
                double acc = 0;
                for (std::size_t c = 0; c < M * M; ++c) acc += weights[s][c] * powabs(g.samples[c], p);
                out[s][cell] = acc;
            }
        }
    return out;
}

StrongMeanFields strong_mean_fields(const SpectralFunction& F, const std::vector<cplx>& f_ref,
                                    const std::vector<long>& Ns, double r, int refine) {
    const std::size_t M = std::size_t{1} << (F.J + refine);
    long n_max = 0;
    for (long N : Ns) n_max = std::max(n_max, N);
    StrongMeanFields out;
    out.Ns = Ns;
    out.dev.assign(Ns.size(), std::vector<double>(M));
    out.amp.assign(Ns.size(), std::vector<double>(M));
    std::vector<double> dev(M, 0.0), amp(M, 0.0);
    for (long n = 1; n <= n_max; ++n) {
        const GridFunction g = partial_sum(F, n, refine);
        for (std::size_t x = 0; x < M; ++x) {
            dev[x] += powabs(g.samples[x] - f_ref[x], r);
            amp[x] += std::norm(g.samples[x]);
        }
        for (std::size_t k = 0; k < Ns.size(); ++k)
            if (Ns[k] == n)
                for (std::size_t x = 0; x < M; ++x) {
                    out.dev[k][x] = dev[x] / static_cast<double>(n);
                    out.amp[k][x] = amp[x] / static_cast<double>(n);
                }
    }
    return out;
}

}  // namespace serial

}  // namespace sm
