#include <doctest.h>

#include <cmath>
#include <sstream>

#include "strongmeans/corpus.hpp"
#include "strongmeans/errors.hpp"
#include "strongmeans/experiment.hpp"
#include "strongmeans/spectral.hpp"

using namespace sm;

namespace {

bool on_lattice(double v, int bits) {
    const double s = std::ldexp(v, bits);
    return s == std::floor(s);
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("corpus functions are exactly representable and L1-normalized") {
    auto corpus = make_corpus({"one", "spike", "multispike", "trig", "noise"}, 10, 3, 42);
    for (const auto& nf : corpus) {
        for (auto v : nf.f.samples) {
            CHECK(v.imag() == 0.0);
            CHECK(on_lattice(v.real(), 24));
        }
        CHECK(nf.f.l1() == doctest::Approx(1.0).epsilon(1e-6));
    }
    for (int k : {2, 5, 16}) {
        auto f = multi_spike(7, 10, k);
        CHECK(f.l1() == 1.0);
        int nz = 0;
        for (auto v : f.samples) nz += v != 0.0;
        CHECK(nz == k);
    }
}

TEST_CASE("corpus is reproducible from the seed") {
    auto a = make_corpus({"multispike", "trig", "noise"}, 9, 2, 5);
    auto b = make_corpus({"multispike", "trig", "noise"}, 9, 2, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].id == b[i].id);
        CHECK(a[i].f.samples == b[i].f.samples);
    }
    CHECK_THROWS_AS(make_corpus({"bogus"}, 9, 1, 1), ConfigError);
}

TEST_CASE("random trig polynomials are band-limited up to quantization") {
    auto f = random_trig(3, 10, 12);
    auto F = forward(f);
    CHECK(out_of_band(F, 12) < 1e-5);
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(parse_config(json{{"experiment", "averaged_moment"}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"experiment", "nope"}, {"seed", 1}}), ConfigError);
    CHECK_THROWS_AS(parse_config(json{{"experiment", "averaged_moment"}, {"seed", 1}, {"J", 8}, {"N", {512}}}),
                    ConfigError);
    auto ok = parse_config(json{{"experiment", "averaged_moment"}, {"seed", 1}, {"J", 8}, {"N", {4, 8}}});
    CHECK(ok.J == 8);
}

TEST_CASE("config hash ignores the output location") {
    json a = {{"experiment", "averaged_moment"}, {"seed", 1}, {"J", 8}};
    json b = a;
    b["output"] = "elsewhere";
    CHECK(config_hash(a) == config_hash(b));
    json c = a;
    c["seed"] = 2;
    CHECK(config_hash(a) != config_hash(c));
    CHECK(config_hash(a).size() == 16);
}

TEST_CASE("averaged moment CSV schema and summary") {
    auto cfg = parse_config(json{{"experiment", "averaged_moment"},
                                 {"seed", 1},
                                 {"J", 10},
                                 {"corpus", {"spike"}},
                                 {"lambda", {8}},
                                 {"N", {4, 16}}});
    auto out = run_experiment(cfg);
    CHECK(first_line(out.csv) == "config_hash,fn_id,lambda,N,avg_moment,full_avg,measure_E,ratio");
    std::istringstream in(out.csv);
    std::string line;
    int rows = -1;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    CHECK(out.csv.find("5/16") != std::string::npos);
    CHECK(out.summary["schema_version"] == kSchemaVersion);
    CHECK(out.summary["config_hash"] == config_hash(cfg.raw));
    CHECK(out.summary.dump().find("time") == std::string::npos);
}

TEST_CASE("small covering suite reports zero violations") {
    auto cfg = parse_config(json{{"experiment", "covering_suite"},
                                 {"seed", 1},
                                 {"trials_1d", 200},
                                 {"trials_2d", 20},
                                 {"chain_levels", 4}});
    auto out = run_experiment(cfg);
    CHECK(out.invariants_ok);
    CHECK(out.summary["pass"] == true);
}

TEST_CASE("baseline tolerances") {
    CHECK(baseline_within("p4_moment", 1.2, 1.0));
    CHECK(baseline_within("p4_moment", 0.1, 1.0));
    CHECK_FALSE(baseline_within("p4_moment", 1.3, 1.0));
    CHECK(baseline_within("averaged_moment", 1.09, 1.0));
    CHECK(baseline_within("averaged_moment", 0.91, 1.0));
    CHECK_FALSE(baseline_within("averaged_moment", 1.11, 1.0));
    CHECK_FALSE(baseline_within("strong_means", 0.85, 1.0));
}

TEST_CASE("baseline round trip") {
    auto cfg = parse_config(json{{"experiment", "averaged_moment"},
                                 {"seed", 1},
                                 {"J", 9},
                                 {"corpus", {"spike", "multispike"}},
                                 {"lambda", {8}},
                                 {"N", {8, 32}}});
    auto out = run_experiment(cfg);
    auto base = make_baseline(cfg, out);
    CHECK(compare_baseline(out, base));
    for (auto& e : base["entries"]) e["value"] = e["value"].get<double>() * 2;
    auto again = run_experiment(cfg);
    CHECK_FALSE(compare_baseline(again, base));
}

TEST_CASE("number formatting") {
    CHECK(fmt12(0.5) == "0.5");
    CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
}
