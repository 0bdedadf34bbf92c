#include "strongmeans/experiment.hpp"


#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "strongmeans/corpus.hpp"
#include "strongmeans/covering.hpp"
#include "strongmeans/czd.hpp"
#include "strongmeans/density.hpp"
#include "strongmeans/errors.hpp"
#include "strongmeans/estimates.hpp"
#include "strongmeans/kernels.hpp"
#include "strongmeans/rng.hpp"

namespace sm {

namespace fs = std::filesystem;

const std::vector<std::string>& experiment_ids() {
    static const std::vector<std::string> ids{"first_reduction", "second_reduction", "averaged_moment", "decay_kernel",
                                              "rect_moment",     "p4_moment",        "strong_means",    "density",
                                              "covering_suite",  "czd_suite"};
    return ids;
}

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string config_hash(const json& raw) {
    json j = raw;
    j.erase("output");
    const std::string s = j.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

namespace {

template <class T>
std::vector<T> get_list(const json& j, const char* key, std::vector<T> dflt = {}) {
    if (!j.contains(key)) return dflt;
    return j.at(key).get<std::vector<T>>();
}

std::vector<long> dyadic_schedule(int J) {
    std::vector<long> s;
    for (int k = 5; k <= J - 2; ++k) s.push_back(1L << k);
    return s;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    ExperimentConfig c;
    try {
        c.raw = j;
        c.experiment = j.at("experiment").get<std::string>();
        if (std::find(experiment_ids().begin(), experiment_ids().end(), c.experiment) == experiment_ids().end())
            throw ConfigError("unknown experiment: " + c.experiment);
        if (!j.contains("seed")) throw ConfigError("seed is mandatory");
        c.seed = j.at("seed").get<std::uint64_t>();
        c.name = j.value("name", c.experiment);
        c.J = j.value("J", 12);
        c.d = j.value("d", 1);
        c.lambdas = get_list<double>(j, "lambda", {8.0});
        c.Ns = get_list<long>(j, "N", dyadic_schedule(c.J));
        c.s_list = get_list<double>(j, "s", {2.0});
        c.eps = get_list<double>(j, "eps", {0.5, 0.25});
        c.families = get_list<std::string>(j, "corpus", {"spike"});
        c.count = j.value("count", 1);
        c.output = j.value("output", std::string{});
        c.baseline = j.value("baseline", std::string{});
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (c.J < 1 || c.J > kDefaultJmax) throw ConfigError("J must lie in [1, J_max]");
    if (c.d != 1 && c.d != 2) throw ConfigError("d must be 1 or 2");
    for (double l : c.lambdas)
        if (!(l > 0)) throw ConfigError("lambda must be positive");
    const long half = 1L << (c.J - 1);
    for (long N : c.Ns)
        if (N < 1 || N > half) throw ConfigError("N schedule outside the aliasing bound");
    if (c.count < 1) throw ConfigError("count must be positive");
    return c;
}

ExperimentConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    ExperimentConfig c = parse_config(j);
    if (!j.contains("name")) c.name = path.stem().string();
    return c;
}

namespace {

struct Csv {
    std::string hash;
    std::ostringstream os;

    Csv(std::string h, const std::string& header) : hash(std::move(h)) { os << "config_hash," << header << "\n"; }
    template <class... T>
    void row(const T&... cells) {
        os << hash;
        ((os << "," << cell(cells)), ...);
        os << "\n";
    }
    static std::string cell(double v) { return fmt12(v); }
    static std::string cell(long v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::uint64_t v) { return std::to_string(v); }
    static std::string cell(bool v) { return v ? "1" : "0"; }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }
    static std::string cell(const Rational& v) { return to_string(v); }
};

std::string key_lambda(double l) { return fmt12(l); }

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::log(x[i]) - mx;
        sxy += a * (std::log(y[i]) - my);
        sxx += a * a;
    }
    return sxx > 0 ? sxy / sxx : 0.0;
}

std::vector<NamedFunction> corpus_of(const ExperimentConfig& c) { return make_corpus(c.families, c.J, c.count, c.seed); }

// ---------------------------------------------------------------------------

RunOutput run_first_reduction(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    Csv csv(h, "fn_id,lambda,moment,full_moment,measure_E,ratio,pass");
    json res = json::array();
    bool all_pass = true, measure_ok = true;
    for (const auto& nf : corpus_of(c))
        for (double lam : c.lambdas) {
            const MomentReport r = verify_first_reduction(nf.f, lam);
            csv.row(nf.id, lam, r.avg_moment, r.full_avg, r.measure_E, r.ratio, r.pass);
            res.push_back({{"fn_id", nf.id}, {"lambda", lam}, {"ratio", r.ratio}, {"pass", r.pass}});
            all_pass = all_pass && r.pass;
            measure_ok = measure_ok && r.measure_ok;
        }
    out.csv = csv.os.str();
    out.summary["results"] = res;
    out.summary["flags"] = {{"all_ratios_le_1", all_pass}, {"measure_bound", measure_ok}};
    out.invariants_ok = all_pass && measure_ok;
    return out;
}

RunOutput run_second_reduction(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    Csv csv(h, "fn_id,lambda,N,moment,full_moment,measure_E,ratio,kernel_mass");
    json res = json::array();
    bool measure_ok = true, order_ok = true;
    std::uint64_t skipped = 0;
    for (const auto& nf : corpus_of(c))
        for (double lam : c.lambdas) {
            double worst = 0;
            bool any = false;
            for (long N : c.Ns) {
                const GridFunction g = N >= 2 ? valle_poussin(nf.f, N / 2) : nf.f;
                if (g.l1() >= lam) {
                    ++skipped;
                    continue;
                }
                const MomentReport r = verify_second_reduction(g, lam, N);
                csv.row(nf.id, lam, N, r.avg_moment, r.full_avg, r.measure_E, r.ratio,
                        kernel_l1(Kernel::Box, N, 0));
                worst = std::max(worst, r.ratio);
                any = true;
                measure_ok = measure_ok && r.measure_ok;
                order_ok = order_ok && r.full_avg >= r.avg_moment;
            }
            if (any) {
                res.push_back({{"fn_id", nf.id}, {"lambda", lam}, {"max_ratio", worst}});
                out.baseline_values.push_back({c.experiment, nf.id, lam, worst});
            }
        }
    out.csv = csv.os.str();
    out.summary["results"] = res;
    out.summary["skipped_height_too_low"] = skipped;
    out.summary["flags"] = {{"measure_bound", measure_ok}, {"full_ge_removed", order_ok}};
    out.invariants_ok = measure_ok && order_ok;
    return out;
}

RunOutput run_averaged(const ExperimentConfig& c, const std::string& h, double p) {
    RunOutput out;
    Csv csv(h, "fn_id,lambda,N,avg_moment,full_avg,measure_E,ratio");
    json res = json::array();
    bool measure_ok = true, order_ok = true;
    const long mono_from = c.raw.value("monotone_from", 0L);
    bool monotone = true;
    for (const auto& nf : corpus_of(c))
        for (double lam : c.lambdas) {
            const auto reps = c.d == 1 ? averaged_moment(nf.f, lam, c.Ns, p) : averaged_moment_rect(nf.f, lam, c.Ns);
            json curve = json::array();
            double worst = 0, peak = 0;
            double prev = -1;
            bool mono = true;
            for (const auto& r : reps) {
                csv.row(nf.id, lam, r.N, r.avg_moment, r.full_avg, r.measure_E, r.ratio);
                curve.push_back({{"N", r.N}, {"avg_moment", r.avg_moment}, {"full_avg", r.full_avg}, {"ratio", r.ratio}});
                worst = std::max(worst, r.ratio);
                peak = std::max(peak, r.avg_moment);
                measure_ok = measure_ok && r.measure_ok;
                order_ok = order_ok && r.full_avg >= r.avg_moment;
                if (mono_from > 0 && r.N >= mono_from) {
                    if (prev >= 0 && r.avg_moment > prev) mono = false;
                    prev = r.avg_moment;
                }
            }
            monotone = monotone && mono;
            json item = {{"fn_id", nf.id},
                         {"lambda", lam},
                         {"measure_E", to_string(reps.front().measure_E)},
                         {"measure_bound", reps.front().measure_ok},
                         {"f_l1", reps.front().f_l1},
                         {"max_ratio", worst},
                         {"max_avg_moment", peak},
                         {"curve", curve}};
            if (mono_from > 0) item["non_increasing"] = mono;
            res.push_back(item);
            out.baseline_values.push_back({c.experiment, nf.id, lam, p == 2 ? worst : peak});
        }
    out.csv = csv.os.str();
    out.summary["results"] = res;
    out.summary["flags"] = {{"measure_bound", measure_ok}, {"full_ge_removed", order_ok}};
    out.invariants_ok = measure_ok && order_ok;
    if (mono_from > 0) {
        out.summary["flags"]["non_increasing"] = monotone;
        out.invariants_ok = out.invariants_ok && monotone;
    }
    return out;
}

RunOutput run_decay(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    Csv csv(h, "fn_id,lambda,s,N,moment,full_moment,measure_E,ratio");
    json res = json::array();
    bool measure_ok = true, bands_ok = true;
    const json bands = c.raw.value("slope_bands", json::object());
    for (const auto& nf : corpus_of(c))
        for (double lam : c.lambdas) {
            const CZDecomposition cz = decompose(nf.f, lam);
            const ExceptionalSet E = build_exceptional_set(cz, 5);
            for (double s : c.s_list) {
                std::vector<double> xs, ys;
                double worst = 0;
                for (long N : c.Ns) {
                    if (N < 2) throw ConfigError("decay_kernel needs N >= 2");
                    const GridFunction g = valle_poussin(nf.f, N / 2);
                    const MomentReport r = verify_decay_kernel(g, lam, N, s, &E);
                    csv.row(nf.id, lam, s, N, r.avg_moment, r.full_avg, r.measure_E, r.ratio);
                    xs.push_back(static_cast<double>(N));
                    ys.push_back(r.avg_moment);
                    worst = std::max(worst, r.ratio);
                    measure_ok = measure_ok && r.measure_ok;
                }
                const double slope = loglog_slope(xs, ys);
                json item = {{"fn_id", nf.id}, {"lambda", lam}, {"s", s}, {"slope", slope}, {"max_ratio", worst}};
                const std::string sk = fmt12(s);
                if (bands.contains(sk)) {
                    const auto b = bands.at(sk).get<std::vector<double>>();
                    const bool in = slope >= b.at(0) && slope <= b.at(1);
                    item["slope_band"] = b;
                    item["slope_in_band"] = in;
                    bands_ok = bands_ok && in;
                }
                res.push_back(item);
                out.baseline_values.push_back({c.experiment, nf.id + "@s=" + sk, lam, worst});
            }
        }
    out.csv = csv.os.str();
    out.summary["results"] = res;
    out.summary["flags"] = {{"measure_bound", measure_ok}, {"slopes_in_band", bands_ok}};
    out.invariants_ok = measure_ok && bands_ok;
    return out;
}

RunOutput run_rect(const ExperimentConfig& c, const std::string& h) {
    if (c.d != 2) throw ConfigError("rect_moment needs d = 2");
    RunOutput out = run_averaged(c, h, 2);
    const double tol = c.raw.value("plateau_tolerance", -1.0);
    bool plateau = true, closed = true;
    for (auto& item : out.summary["results"]) {
        const auto& curve = item["curve"];
        if (item["fn_id"] == "tensor_spike")
            for (const auto& pt : curve) {
                const double N = pt["N"].get<double>();
                const bool ok = std::fabs(pt["full_avg"].get<double>() - (N + 2) * (N + 2)) <= 1e-6;
                closed = closed && ok;
            }
        if (tol >= 0 && curve.size() >= 2) {
            const double a = curve[curve.size() - 2]["avg_moment"].get<double>();
            const double b = curve[curve.size() - 1]["avg_moment"].get<double>();
            const double change = a > 0 ? std::fabs(b / a - 1.0) : 0.0;
            item["last_step_change"] = change;
            item["plateau"] = change <= tol;
            plateau = plateau && change <= tol;
        }
    }
    out.summary["flags"]["tensor_spike_closed_form"] = closed;
    out.invariants_ok = out.invariants_ok && closed;
    if (tol >= 0) {
        out.summary["flags"]["plateau"] = plateau;
        out.invariants_ok = out.invariants_ok && plateau;
    }
    return out;
}

RunOutput run_strong_means(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    Csv csv(h, "fn_id,N,eps,level_measure,max_dev,weak_ratio");
    json res = json::array();
    const long mono_until = c.raw.value("monotone_until", 0L);
    const long zero_from = c.raw.value("zero_from", 0L);
    bool mono_all = true, zero_all = true;
    for (const auto& nf : corpus_of(c)) {
        const StrongMeansReport r = strong_means_measure(nf.f, c.eps, c.Ns, 2.0);
        double sup_ratio = 0;
        for (double v : r.weak_ratio) sup_ratio = std::max(sup_ratio, v);
        json per_eps = json::array();
        for (std::size_t e = 0; e < c.eps.size(); ++e) {
            bool mono = true, zero = true;
            double prev = -1;
            for (std::size_t k = 0; k < c.Ns.size(); ++k) {
                const double m = r.level_measure[e][k];
                csv.row(nf.id, c.Ns[k], c.eps[e], m, r.max_dev[k], r.weak_ratio[k]);
                if (mono_until > 0 && c.Ns[k] <= mono_until) {
                    if (prev >= 0 && m > prev) mono = false;
                    prev = m;
                }
                if (zero_from > 0 && c.Ns[k] >= zero_from && m != 0.0) zero = false;
            }
            json item = {{"eps", c.eps[e]}, {"level_measure", r.level_measure[e]}};
            if (mono_until > 0) item["non_increasing"] = mono;
            if (zero_from > 0) item["zero_at_band_limit"] = zero;
            mono_all = mono_all && mono;
            zero_all = zero_all && zero;
            per_eps.push_back(item);
        }
        res.push_back({{"fn_id", nf.id},
                       {"N", c.Ns},
                       {"f_linf", r.f_linf},
                       {"max_dev_over_linf2", r.max_dev},
                       {"weak_ratio", r.weak_ratio},
                       {"sup_weak_ratio", sup_ratio},
                       {"eps", per_eps}});
        out.baseline_values.push_back({c.experiment, nf.id, 0.0, sup_ratio});
    }
    out.csv = csv.os.str();
    out.summary["results"] = res;
    out.summary["flags"] = json::object();
    if (mono_until > 0) out.summary["flags"]["non_increasing"] = mono_all;
    if (zero_from > 0) out.summary["flags"]["zero_at_band_limit"] = zero_all;
    out.invariants_ok = mono_all && zero_all;
    return out;
}

RunOutput run_density(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    const json seq = c.raw.at("sequence");
    const int d = seq.value("d", 1);
    const long n_max = seq.at("n_max").get<long>();
    const double s = seq.value("s", 0.0);
    const double expo = seq.value("exponent", -0.25);
    const long base = c.raw.value("schedule_base", 4L);
    const double min_density = c.raw.value("min_density", 0.0);
    std::vector<long> sched;
    for (long N = 1; N <= n_max; N *= base) sched.push_back(N);
    const auto values = power_sequence(d, n_max, s, expo);
    const DensityRun run = density_subsequence(values, d, n_max, s, sched, {n_max});
    Csv csv(h, "d,N,density,mean_square");
    for (std::size_t i = 0; i < run.curve_N.size(); ++i) {
        const auto it = std::find(run.schedule.begin(), run.schedule.end(), run.curve_N[i]);
        const std::string ms = it == run.schedule.end() ? std::string{}
                                                        : fmt12(run.mean_square[static_cast<std::size_t>(it - run.schedule.begin())]);
        csv.row(d, run.curve_N[i], run.curve[i], ms);
    }
    out.csv = csv.os.str();
    std::vector<long> kN;
    for (int k : run.k_m) kN.push_back(run.schedule[static_cast<std::size_t>(k)]);
    const double final_density = run.curve.back();
    out.summary["results"] = {{"d", d},
                              {"n_max", n_max},
                              {"shell_starts", kN},
                              {"members", run.members.size()},
                              {"checked", run.checked},
                              {"threshold_failures", run.threshold_failures},
                              {"final_density", final_density}};
    const bool dens_ok = final_density >= min_density;
    out.summary["flags"] = {{"threshold_membership", run.threshold_failures == 0},
                            {"density_guarantee", run.guarantee_holds},
                            {"final_density_ge_min", dens_ok}};
    out.invariants_ok = run.threshold_failures == 0 && run.guarantee_holds && dens_ok;
    return out;
}

RunOutput run_covering(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    const auto t1 = c.raw.value("trials_1d", std::uint64_t{10000});
    const auto t2 = c.raw.value("trials_2d", std::uint64_t{1000});
    const int j1 = c.raw.value("J_1d", 12), j2 = c.raw.value("J_2d", 7);
    const int m1 = c.raw.value("max_count_1d", 64), m2 = c.raw.value("max_count_2d", 32);
    const int chain_levels = c.raw.value("chain_levels", 6);
    const auto a = covering_suite_1d(derive_seed(c.seed, 1), t1, j1, m1);
    const auto b = covering_suite_cubes(derive_seed(c.seed, 2), t2, 2, j2, m2);
    const auto ch = enumerate_chains(chain_levels);
    Csv csv(h, "suite,cases,violations,literal_violations,components,cases_with_merges,max_component");
    csv.row("cover_1d", a.families, a.violations, a.literal_violations, a.components, a.families_with_merges,
            a.max_component);
    csv.row("cover_2d", b.families, b.violations, b.literal_violations, b.components, b.families_with_merges,
            b.max_component);
    csv.row("chains", ch.chains, ch.exceptions, std::uint64_t{0}, std::uint64_t{0}, std::uint64_t{0}, std::uint64_t{0});
    out.csv = csv.os.str();
    out.summary["results"] = {
        {"cover_1d", {{"families", a.families}, {"violations", a.violations}, {"literal_violations", a.literal_violations},
                      {"families_with_merges", a.families_with_merges}, {"max_component", a.max_component}}},
        {"cover_2d", {{"families", b.families}, {"violations", b.violations}, {"literal_violations", b.literal_violations},
                      {"families_with_merges", b.families_with_merges}, {"max_component", b.max_component}}},
        {"chains", {{"levels", chain_levels}, {"chains", ch.chains}, {"exceptions", ch.exceptions}}}};
    out.summary["violations"] = a.violations + b.violations;
    out.summary["flags"] = {{"containment", a.violations + b.violations == 0}, {"chain_claim", ch.exceptions == 0}};
    out.invariants_ok = a.violations + b.violations == 0 && ch.exceptions == 0;
    return out;
}

struct CZTrial {
    CZAudit audit;
    bool monotone = true;
    std::uint64_t bad_cells = 0;
};

CZTrial cz_trial(std::uint64_t seed, int J, const std::vector<std::string>& families) {
    boost::random::mt19937_64 rng(seed);
    const auto fam = families[boost::random::uniform_int_distribution<std::size_t>(0, families.size() - 1)(rng)];
    const auto funcs = make_corpus({fam}, J, 1, rng());
    const GridFunction& f = funcs.front().f;
    boost::random::uniform_real_distribution<double> u(0.01, 6.0);
    const double lam = f.l1() * std::exp2(u(rng));
    const double lam2 = lam * std::exp2(u(rng) / 3);
    const CZDecomposition cz = decompose(f, lam);
    const CZDecomposition cz2 = decompose(f, lam2);
    CZTrial t;
    t.audit = audit(cz);
    t.monotone = nested(cz, cz2);
    t.bad_cells = cz.bad.size();
    return t;
}

RunOutput run_czd(const ExperimentConfig& c, const std::string& h) {
    RunOutput out;
    const auto pairs = c.raw.value("pairs", std::uint64_t{10000});
    const auto pairs2 = c.raw.value("pairs_2d", std::uint64_t{0});
    const int J2 = c.raw.value("J_2d", 7);
    const auto fam2 = get_list<std::string>(c.raw, "corpus_2d", {"tensor_spike", "tensor_multispike", "tensor_trig"});
    Csv csv(h, "d,pairs,disjoint_fail,maximal_fail,avg_fail,weak_fail,recon_fail,good_fail,monotone_fail,bad_cells");
    json res = json::array();
    bool all_ok = true;
    for (int d : {1, 2}) {
        const std::uint64_t n = d == 1 ? pairs : pairs2;
        if (n == 0) continue;
        std::vector<CZTrial> trials(n);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
            trials[static_cast<std::size_t>(i)] = cz_trial(derive_seed(c.seed, static_cast<std::uint64_t>(i) * 2 + static_cast<std::uint64_t>(d)),
                                                           d == 1 ? c.J : J2, d == 1 ? c.families : fam2);
        std::uint64_t f[7] = {0, 0, 0, 0, 0, 0, 0}, cells = 0;
        for (const auto& t : trials) {
            f[0] += !t.audit.disjoint;
            f[1] += !t.audit.maximal;
            f[2] += !t.audit.avg_bounds;
            f[3] += !t.audit.weak_type;
            f[4] += !t.audit.reconstruction;
            f[5] += !t.audit.good_bound;
            f[6] += !t.monotone;
            cells += t.bad_cells;
        }
        csv.row(d, n, f[0], f[1], f[2], f[3], f[4], f[5], f[6], cells);
        std::uint64_t tot = 0;
        for (auto v : f) tot += v;
        all_ok = all_ok && tot == 0;
        res.push_back({{"d", d}, {"pairs", n}, {"failures", tot}, {"bad_cells", cells}});
    }
    out.csv = csv.os.str();
    out.summary["results"] = res;
    out.summary["flags"] = {{"all_invariants", all_ok}};
    out.invariants_ok = all_ok;
    return out;
}

}  // namespace

RunOutput run_experiment(const ExperimentConfig& c) {
    const std::string h = config_hash(c.raw);
    RunOutput out;
    if (c.experiment == "first_reduction") out = run_first_reduction(c, h);
    else if (c.experiment == "second_reduction") out = run_second_reduction(c, h);
    else if (c.experiment == "averaged_moment") out = run_averaged(c, h, 2);
    else if (c.experiment == "p4_moment") out = run_averaged(c, h, 4);
    else if (c.experiment == "decay_kernel") out = run_decay(c, h);
    else if (c.experiment == "rect_moment") out = run_rect(c, h);
    else if (c.experiment == "strong_means") out = run_strong_means(c, h);
    else if (c.experiment == "density") out = run_density(c, h);
    else if (c.experiment == "covering_suite") out = run_covering(c, h);
    else out = run_czd(c, h);
    json s;
    s["schema_version"] = kSchemaVersion;
    s["experiment"] = c.experiment;
    s["name"] = c.name;
    s["config_hash"] = h;
    for (auto it = out.summary.begin(); it != out.summary.end(); ++it) s[it.key()] = it.value();
    s["baseline"] = {{"mode", "none"}};
    s["invariants_ok"] = out.invariants_ok;
    s["pass"] = out.invariants_ok;
    out.summary = s;
    return out;
}

bool baseline_within(const std::string& experiment, double value, double baseline) {
    if (experiment == "p4_moment") return value <= 1.25 * baseline;
    if (baseline == 0) return value == 0;
    return std::fabs(value / baseline - 1.0) <= 0.10;
}

json make_baseline(const ExperimentConfig& cfg, const RunOutput& out) {
    json entries = json::array();
    for (const auto& e : out.baseline_values)
        entries.push_back({{"experiment", e.experiment}, {"fn_id", e.fn_id}, {"lambda", e.lambda}, {"value", e.value}});
    json cfg_raw = cfg.raw;
    cfg_raw.erase("output");
    return {{"schema_version", kSchemaVersion},
            {"experiment", cfg.experiment},
            {"config_hash", config_hash(cfg.raw)},
            {"config", cfg_raw},
            {"entries", entries}};
}

bool compare_baseline(RunOutput& out, const json& baseline) {
    std::map<std::string, double> ref;
    for (const auto& e : baseline.at("entries"))
        ref[e.at("experiment").get<std::string>() + "|" + e.at("fn_id").get<std::string>() + "|" +
            key_lambda(e.at("lambda").get<double>())] = e.at("value").get<double>();
    json deltas = json::array();
    bool ok = true;
    for (const auto& v : out.baseline_values) {
        const std::string key = v.experiment + "|" + v.fn_id + "|" + key_lambda(v.lambda);
        auto it = ref.find(key);
        json d = {{"fn_id", v.fn_id}, {"lambda", v.lambda}, {"value", v.value}};
        if (it == ref.end()) {
            d["status"] = "missing";
            ok = false;
        } else {
            const bool within = baseline_within(v.experiment, v.value, it->second);
            d["baseline"] = it->second;
            d["rel_delta"] = it->second != 0 ? v.value / it->second - 1.0 : 0.0;
            d["status"] = within ? "ok" : "regression";
            ok = ok && within;
        }
        deltas.push_back(d);
    }
    out.summary["baseline"] = {{"mode", "compare"}, {"ok", ok}, {"deltas", deltas}};
    out.summary["pass"] = out.invariants_ok && ok;
    return ok;
}

RunFiles run_to_files(const fs::path& config_path, const std::optional<fs::path>& out_dir, bool record_baseline) {
    const ExperimentConfig cfg = load_config(config_path);
    RunOutput out = run_experiment(cfg);
    RunFiles files;
    bool base_ok = true;
    if (!cfg.baseline.empty() && !out.baseline_values.empty()) {
        const fs::path bpath = config_path.parent_path() / cfg.baseline;
        if (record_baseline || !fs::exists(bpath)) {
            fs::create_directories(bpath.parent_path());
            std::ofstream(bpath) << make_baseline(cfg, out).dump(2) << "\n";
            out.summary["baseline"] = {{"mode", "record"}, {"ok", true}};
            files.baseline_written = bpath;
        } else {
            std::ifstream in(bpath);
            json b;
            in >> b;
            base_ok = compare_baseline(out, b);
        }
    }
    fs::path dir = out_dir ? *out_dir : fs::path{};
    if (dir.empty())
        if (const char* env = std::getenv("STRONGMEANS_OUT")) dir = env;
    if (dir.empty()) dir = cfg.output.empty() ? fs::path("out") : fs::path(cfg.output);
    fs::create_directories(dir);
    files.csv = dir / (cfg.name + ".csv");
    files.summary = dir / (cfg.name + ".json");
    std::ofstream(files.csv, std::ios::binary) << out.csv;
    std::ofstream(files.summary, std::ios::binary) << out.summary.dump(2) << "\n";
    files.ok = out.invariants_ok && base_ok;
    return files;
}

int verify_baselines(const fs::path& dir, std::ostream& log) {
    std::vector<fs::path> paths;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") paths.push_back(e.path());
    std::sort(paths.begin(), paths.end());
    int failures = 0;
    for (const auto& p : paths) {
        std::ifstream in(p);
        json b;
        in >> b;
        ExperimentConfig cfg = parse_config(b.at("config"));
        RunOutput out = run_experiment(cfg);
        const bool ok = compare_baseline(out, b);
        log << (ok ? "ok    " : "FAIL  ") << p.filename().string() << " (" << out.baseline_values.size()
            << " entries)\n";
        if (!ok) {
            ++failures;
            for (const auto& d : out.summary["baseline"]["deltas"])
                if (d["status"] != "ok") log << "      " << d.dump() << "\n";
        }
    }
    return failures;
}

}  // namespace sm
