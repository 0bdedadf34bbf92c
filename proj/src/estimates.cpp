#include "strongmeans/estimates.hpp"

#include <algorithm>
#include <cmath>

#include "strongmeans/errors.hpp"
#include "strongmeans/kernels.hpp"
#include "strongmeans/moments.hpp"

namespace sm {

Rational ExceptionalSet::measure() const {
    if (boxes.empty()) return Rational(0);
    return union_measure(boxes);
}

ExceptionalSet build_exceptional_set(const CZDecomposition& cz, int c, int jmax) {
    if (c != 1 && c != 3 && c != 5) throw InvalidFactor("exceptional set factor must be 1, 3 or 5");
    ExceptionalSet E;
    E.d = cz.d;
    E.lambda = cz.lambda;
    E.c = c;
    E.scale = scale_for(jmax);
    for (const auto& q : cz.bad) E.boxes.push_back(c == 1 ? to_box(q, jmax) : dilate(q, Factor{c, 1}, jmax));
    return E;
}

bool measure_bound_holds(const ExceptionalSet& E, double f_l1, double height_scale) {
    Rational c = 1;
    for (int i = 0; i < E.d; ++i) c *= E.c;
    const Rational bound = c * Rational(f_l1) * Rational(height_scale) / Rational(E.lambda);
    return E.measure() <= bound;
}

std::vector<double> complement_weights(const ExceptionalSet& E, int Jq) {
    const std::int64_t S = E.scale;
    if (Jq < 0 || (std::int64_t{1} << Jq) > S) throw ResolutionError("quadrature grid finer than the exact scale");
    const std::int64_t w = S >> Jq;
    const std::size_t side = std::size_t{1} << Jq;
    if (E.d == 1) {
        std::vector<std::int64_t> t(side, w);
        std::vector<ScaledInterval> arcs;
        for (const auto& b : E.boxes) arcs.push_back(b.axes[0]);
        for (const auto& [a, b] : union_pieces(arcs))
            for (std::int64_t c = a / w; c * w < b; ++c)
                t[static_cast<std::size_t>(c)] -= std::min(b, (c + 1) * w) - std::max(a, c * w);
        std::vector<double> out(side);
        for (std::size_t i = 0; i < side; ++i) out[i] = static_cast<double>(t[i]) / static_cast<double>(S);
        return out;
    }
    std::vector<std::int64_t> t(side * side, w * w);
    for (const auto& r : union_rects(E.boxes))
        for (std::int64_t cx = r.x0 / w; cx * w < r.x1; ++cx) {
            const std::int64_t ox = std::min(r.x1, (cx + 1) * w) - std::max(r.x0, cx * w);
            for (std::int64_t cy = r.y0 / w; cy * w < r.y1; ++cy) {
                const std::int64_t oy = std::min(r.y1, (cy + 1) * w) - std::max(r.y0, cy * w);
                t[static_cast<std::size_t>(cx) * side + static_cast<std::size_t>(cy)] -= ox * oy;
            }
        }
    std::vector<double> out(side * side);
    const double inv = 1.0 / (static_cast<double>(S) * static_cast<double>(S));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<double>(t[i]) * inv;
    return out;
}

double weighted_moment(const std::vector<cplx>& g, const std::vector<double>& weights, double p) {
    if (g.size() != weights.size()) throw PreconditionError("weighted_moment: grid mismatch");
    double acc = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (weights[i] != 0) acc += weights[i] * std::pow(std::abs(g[i]), p);
    return acc;
}

double weighted_moment(const GridFunction& g, const ExceptionalSet& E, double p) {
    return weighted_moment(g.samples, complement_weights(E, g.J), p);
}

namespace {

std::vector<double> uniform_weights(std::size_t n) { return std::vector<double>(n, 1.0 / static_cast<double>(n)); }

MomentReport kernel_moment(const GridFunction& f, const SpectralFunction& F, double lambda, long N, Kernel k,
                           double s, const ExceptionalSet& E) {
    const long n_eval = std::min(N, F.half());
    const GridFunction g = partial_sum(F, n_eval);
    std::vector<double> h(g.size());
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = std::norm(g.samples[i]);
    const auto conv = circular_convolve(h, kernel_cell_masses(k, N, s, g.size()));
    const auto w = complement_weights(E, g.J);
    MomentReport r;
    r.lambda = lambda;
    r.N = N;
    r.p = 2;
    r.f_l1 = f.l1();
    for (std::size_t i = 0; i < conv.size(); ++i) {
        r.avg_moment += w[i] * conv[i];
        r.full_avg += conv[i] / static_cast<double>(conv.size());
    }
    r.measure_E = E.measure();
    r.measure_ok = measure_bound_holds(E, r.f_l1);
    r.ratio = r.avg_moment / (lambda * r.f_l1 * r.f_l1);
    return r;
}

void require_band_limited(const SpectralFunction& F, long N) {
    if (out_of_band(F, N) > 1e-12) throw NotBandLimited("input is not band-limited to [-N, N]");
}

}  // namespace

MomentReport verify_first_reduction(const GridFunction& f, double lambda) {
    const CZDecomposition cz = decompose(f, lambda);
    const ExceptionalSet E = build_exceptional_set(cz, 1);
    MomentReport r;
    r.lambda = lambda;
    r.f_l1 = f.l1();
    r.avg_moment = weighted_moment(f, E, 2);
    r.full_avg = f.l2sq();
    r.measure_E = E.measure();
    r.measure_ok = measure_bound_holds(E, r.f_l1);
    r.ratio = r.avg_moment / (lambda * r.f_l1 * r.f_l1);
    r.pass = r.ratio <= 1.0;
    return r;
}

MomentReport verify_second_reduction(const GridFunction& f, double lambda, long N) {
    if (f.d != 1) throw PreconditionError("verify_second_reduction expects d = 1");
    const SpectralFunction F = forward(f);
    require_band_limited(F, N);
    const CZDecomposition cz = decompose(f, lambda);
    const ExceptionalSet E = build_exceptional_set(cz, 3);
    return kernel_moment(f, F, lambda, N, Kernel::Box, 0, E);
}

MomentReport verify_decay_kernel(const GridFunction& f, double lambda, long N, double s, const ExceptionalSet* E) {
    if (!(s > 1)) throw PreconditionError("decay kernel needs s > 1");
    if (f.d != 1) throw PreconditionError("verify_decay_kernel expects d = 1");
    const SpectralFunction F = forward(f);
    require_band_limited(F, N);
    if (E) return kernel_moment(f, F, lambda, N, Kernel::Decay, s, *E);
    const CZDecomposition cz = decompose(f, lambda);
    return kernel_moment(f, F, lambda, N, Kernel::Decay, s, build_exceptional_set(cz, 5));
}

std::vector<MomentReport> averaged_moment(const GridFunction& f, double lambda, const std::vector<long>& Ns, double p,
                                          int c) {
    if (f.d != 1) throw PreconditionError("averaged_moment expects d = 1");
    if (Ns.empty()) return {};
    const long n_max = *std::max_element(Ns.begin(), Ns.end());
    if (n_max > (1L << (f.J - 1))) throw AliasingError("schedule exceeds the grid spectrum");
    if (p > 2 && *std::min_element(Ns.begin(), Ns.end()) < 2) throw PreconditionError("log normalization needs N >= 2");
    const CZDecomposition cz = decompose(f, lambda);
    const ExceptionalSet E = build_exceptional_set(cz, c);
    const int Jq = f.J + kRefine;
    const auto wE = complement_weights(E, Jq);
    const auto moments = partial_sum_moments(forward(f), {wE, uniform_weights(wE.size())}, n_max, p);
    const Rational mE = E.measure();
    const double l1 = f.l1();
    const bool ok = measure_bound_holds(E, l1);
    std::vector<MomentReport> out;
    for (long N : Ns) {
        double a = 0, b = 0;
        for (long n = 1; n <= N; ++n) {
            a += moments[0][static_cast<std::size_t>(n - 1)];
            b += moments[1][static_cast<std::size_t>(n - 1)];
        }
        const double norm = p == 2 ? static_cast<double>(N)
                                   : static_cast<double>(N) * std::pow(std::log(static_cast<double>(N)), p - 2);
        MomentReport r;
        r.lambda = lambda;
        r.N = N;
        r.p = p;
        r.avg_moment = a / norm;
        r.full_avg = b / norm;
        r.measure_E = mE;
        r.f_l1 = l1;
        r.measure_ok = ok;
        r.ratio = r.avg_moment / (std::pow(lambda, p - 1) * std::pow(l1, p));
        out.push_back(r);
    }
    return out;
}

std::vector<MomentReport> averaged_moment_rect(const GridFunction& f, double lambda, const std::vector<long>& Ns,
                                               int c) {
    if (f.d != 2) throw PreconditionError("averaged_moment_rect expects d = 2");
    if (Ns.empty()) return {};
    const long n_max = *std::max_element(Ns.begin(), Ns.end());
    if (n_max > (1L << (f.J - 1))) throw AliasingError("schedule exceeds the grid spectrum");
    const CZDecomposition cz = decompose(f, lambda);
    const ExceptionalSet E = build_exceptional_set(cz, c);
    const int Jq = f.J + kRefine;
    const auto wE = complement_weights(E, Jq);
    const auto table = rect_moments(forward(f), {wE, uniform_weights(wE.size())}, n_max, 2);
    const Rational mE = E.measure();
    const double l1 = f.l1();
    const bool ok = measure_bound_holds(E, l1);
    const std::size_t nn = static_cast<std::size_t>(n_max);
    std::vector<MomentReport> out;
    for (long N : Ns) {
        double a = 0, b = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(N); ++i)
            for (std::size_t j = 0; j < static_cast<std::size_t>(N); ++j) {
                a += table[0][i * nn + j];
                b += table[1][i * nn + j];
            }
        const double norm = static_cast<double>(N) * static_cast<double>(N);
        MomentReport r;
        r.lambda = lambda;
        r.N = N;
        r.avg_moment = a / norm;
        r.full_avg = b / norm;
        r.measure_E = mE;
        r.f_l1 = l1;
        r.measure_ok = ok;
        r.ratio = r.avg_moment / (lambda * l1 * l1);
        out.push_back(r);
    }
    return out;
}

StrongMeansReport strong_means_measure(const GridFunction& f, const std::vector<double>& eps,
                                       const std::vector<long>& Ns, double r, const std::vector<double>& lambda_grid) {
    if (f.d != 1) throw PreconditionError("strong_means_measure expects d = 1");
    StrongMeansReport rep;
    rep.Ns = Ns;
    rep.eps = eps;
    rep.f_l1 = f.l1();
    rep.f_linf = f.linf();
    rep.lambdas = lambda_grid;
    if (rep.lambdas.empty())
        for (int k = 0; k <= f.J; ++k) rep.lambdas.push_back(std::ldexp(rep.f_l1, k));
    const GridFunction fr = refine_piecewise(f, kRefine);
    const auto fields = strong_mean_fields(forward(f), fr.samples, Ns, r);
    const double M = static_cast<double>(fr.size());
    const double scale = std::pow(rep.f_linf, r);
    rep.level_measure.assign(eps.size(), std::vector<double>(Ns.size(), 0.0));
    for (std::size_t k = 0; k < Ns.size(); ++k) {
        const auto& dev = fields.dev[k];
        double mx = 0;
        for (double v : dev) mx = std::max(mx, v);
        rep.max_dev.push_back(scale > 0 ? mx / scale : 0.0);
        for (std::size_t e = 0; e < eps.size(); ++e) {
            std::size_t cnt = 0;
            for (double v : dev)
                if (v > eps[e] * scale) ++cnt;
            rep.level_measure[e][k] = static_cast<double>(cnt) / M;
        }
        double best = 0;
        for (double lam : rep.lambdas) {
            std::size_t cnt = 0;
            for (double a : fields.amp[k])
                if (std::sqrt(a) > lam) ++cnt;
            best = std::max(best, lam * static_cast<double>(cnt) / M / rep.f_l1);
        }
        rep.weak_ratio.push_back(best);
    }
    return rep;
}

}  // namespace sm
