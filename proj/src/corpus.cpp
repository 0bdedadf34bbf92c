#include "strongmeans/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "strongmeans/errors.hpp"
#include "strongmeans/rng.hpp"
#include "strongmeans/spectral.hpp"

namespace sm {

namespace {

void quantize(GridFunction& f, int bits) {
    for (auto& v : f.samples) v = cplx(std::ldexp(std::round(std::ldexp(v.real(), bits)), -bits), 0.0);
}

void normalize_l1(GridFunction& f) {
    const double s = f.l1();
    for (auto& v : f.samples) v /= s;
}

}  // namespace

GridFunction spike(int J, int d) {
    GridFunction f(d, J);
    f.samples[0] = std::ldexp(1.0, d * J);
    return f;
}

GridFunction tensor(const GridFunction& a, const GridFunction& b) {
    if (a.d != 1 || b.d != 1 || a.J != b.J) throw PreconditionError("tensor expects two 1-d functions on one grid");
    GridFunction f(2, a.J);
    const std::size_t n = a.side();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f.samples[i * n + j] = a.samples[i] * b.samples[j];
    return f;
}

GridFunction exponential(int J, long m) {
    GridFunction f(1, J);
    const double n = static_cast<double>(f.side());
    for (std::size_t t = 0; t < f.side(); ++t)
        f.samples[t] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(t) / n);
    return f;
}

GridFunction multi_spike(std::uint64_t seed, int J, int k) {
    boost::random::mt19937_64 rng(seed);
    const std::int64_t n = std::int64_t{1} << J;
    k = static_cast<int>(std::min<std::int64_t>(k, n));
    std::vector<std::int64_t> pos;
    boost::random::uniform_int_distribution<std::int64_t> where(0, n - 1);
    while (static_cast<int>(pos.size()) < k) {
        const std::int64_t p = where(rng);
        if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    // weights: k positive integers summing to 2^bits
    const int bits = 16;
    const std::int64_t total = std::int64_t{1} << bits;
    std::vector<std::int64_t> cuts{0, total};
    boost::random::uniform_int_distribution<std::int64_t> cut(1, total - 1);
    while (static_cast<int>(cuts.size()) < k + 1) {
        const std::int64_t c = cut(rng);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    GridFunction f(1, J);
    for (int i = 0; i < k; ++i)
        f.samples[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] =
            std::ldexp(static_cast<double>(cuts[static_cast<std::size_t>(i) + 1] - cuts[static_cast<std::size_t>(i)]), J - bits);
    return f;
}

GridFunction random_trig(std::uint64_t seed, int J, long degree) {
    boost::random::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> g;
    boost::random::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    SpectralFunction F{1, J, std::vector<cplx>(std::size_t{1} << J)};
    degree = std::min(degree, F.half() - 1);
    F.coeffs[0] = g(rng);
    for (long m = 1; m <= degree; ++m) {
        const double a = g(rng);
        const cplx c = std::polar(a / 2, ph(rng));
        F.coeffs[F.slot(m)] = c;
        F.coeffs[F.slot(-m)] = std::conj(c);
    }
    GridFunction f = inverse(F);
    for (auto& v : f.samples) v = cplx(v.real(), 0.0);
    normalize_l1(f);
    quantize(f, 24);
    return f;
}

GridFunction abs_noise(std::uint64_t seed, int J) {
    boost::random::mt19937_64 rng(seed);
    boost::random::normal_distribution<double> g;
    GridFunction f(1, J);
    for (auto& v : f.samples) v = std::fabs(g(rng));
    normalize_l1(f);
    quantize(f, 24);
    return f;
}

const std::vector<std::string>& known_families() {
    static const std::vector<std::string> f{"one",   "spike",        "multispike",        "trig",        "noise",
                                            "one2",  "tensor_spike", "tensor_multispike", "tensor_trig"};
    return f;
}

std::vector<NamedFunction> make_corpus(const std::vector<std::string>& families, int J, int count, std::uint64_t seed) {
    std::vector<NamedFunction> out;
    for (std::size_t fi = 0; fi < families.size(); ++fi) {
        const std::string& fam = families[fi];
        if (std::find(known_families().begin(), known_families().end(), fam) == known_families().end())
            throw ConfigError("unknown corpus family: " + fam);
        const bool single = fam == "one" || fam == "one2" || fam == "spike" || fam == "tensor_spike";
        const int reps = single ? 1 : count;
        for (int r = 0; r < reps; ++r) {
            const std::uint64_t s = derive_seed(seed, fi * 1000003ULL + static_cast<std::uint64_t>(r));
            boost::random::mt19937_64 rng(s);
            auto pick = [&](std::int64_t a, std::int64_t b) { return boost::random::uniform_int_distribution<std::int64_t>(a, b)(rng); };
            const long deg_max = std::max(1L, 1L << std::max(0, J - 3));
            NamedFunction nf;
            nf.id = single ? fam : fam + "_" + std::to_string(r);
            if (fam == "one") nf.f = constant(1, J, 1.0);
            else if (fam == "one2") nf.f = constant(2, J, 1.0);
            else if (fam == "spike") nf.f = spike(J, 1);
            else if (fam == "tensor_spike") nf.f = spike(J, 2);
            else if (fam == "multispike") nf.f = multi_spike(rng(), J, static_cast<int>(pick(2, 16)));
            else if (fam == "trig") nf.f = random_trig(rng(), J, pick(1, deg_max));
            else if (fam == "noise") nf.f = abs_noise(rng(), J);
            else if (fam == "tensor_multispike") {
                const auto a = multi_spike(rng(), J, static_cast<int>(pick(2, 16)));
                const auto b = multi_spike(rng(), J, static_cast<int>(pick(2, 16)));
                nf.f = tensor(a, b);
            } else {
                const auto a = random_trig(rng(), J, pick(1, deg_max));
                const auto b = random_trig(rng(), J, pick(1, deg_max));
                nf.f = tensor(a, b);
                quantize(nf.f, 24);
            }
            out.push_back(std::move(nf));
        }
    }
    return out;
}

}  // namespace sm
