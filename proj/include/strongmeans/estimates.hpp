#pragma once

#include <optional>
#include <vector>

#include "strongmeans/czd.hpp"
#include "strongmeans/dyadic.hpp"
#include "strongmeans/grid.hpp"
#include "strongmeans/spectral.hpp"

namespace sm {

struct ExceptionalSet {
    int d = 1;
    double lambda = 0;
    int c = 5;
    std::int64_t scale = scale_for(kDefaultJmax);
    std::vector<ScaledBox> boxes;

    Rational measure() const;
};

ExceptionalSet build_exceptional_set(const CZDecomposition& cz, int c, int jmax = kDefaultJmax);

// measure(E) <= c^d ||f||_1 height_scale / lambda, compared exactly.
bool measure_bound_holds(const ExceptionalSet& E, double f_l1, double height_scale = 1.0);

// Exact measure(cell \ E) for every cell of the 2^Jq grid (per axis), as doubles.
std::vector<double> complement_weights(const ExceptionalSet& E, int Jq);

double weighted_moment(const std::vector<cplx>& g, const std::vector<double>& weights, double p);
double weighted_moment(const GridFunction& g, const ExceptionalSet& E, double p);

struct MomentReport {
    double lambda = 0;
    long N = 0;
    double p = 2;
    double avg_moment = 0;
    double full_avg = 0;
    Rational measure_E;
    double ratio = 0;
    double f_l1 = 0;
    bool measure_ok = true;
    bool pass = true;
};

MomentReport verify_first_reduction(const GridFunction& f, double lambda);
MomentReport verify_second_reduction(const GridFunction& f, double lambda, long N);
// E defaults to 5I over the CZ cells of f itself.
MomentReport verify_decay_kernel(const GridFunction& f, double lambda, long N, double s,
                                 const ExceptionalSet* E = nullptr);

// One E for the whole curve; p = 2 uses 1/N, p > 2 uses 1/(N log^(p-2) N).
std::vector<MomentReport> averaged_moment(const GridFunction& f, double lambda, const std::vector<long>& Ns,
                                          double p = 2, int c = 5);
std::vector<MomentReport> averaged_moment_rect(const GridFunction& f, double lambda, const std::vector<long>& Ns,
                                               int c = 5);

struct StrongMeansReport {
    std::vector<long> Ns;
    std::vector<double> eps;
    std::vector<std::vector<double>> level_measure;  // [eps][N]
    std::vector<double> max_dev;                     // max over x of the mean deviation, per N
    std::vector<double> lambdas;
    std::vector<double> weak_ratio;  // per N: sup over lambdas of lambda |{A_N f > lambda}| / ||f||_1
    double f_l1 = 0;
    double f_linf = 0;
};

// Super-level threshold is eps * ||f||_inf^2 (r = 2) or eps * ||f||_inf^r.
StrongMeansReport strong_means_measure(const GridFunction& f, const std::vector<double>& eps,
                                       const std::vector<long>& Ns, double r = 2,
                                       const std::vector<double>& lambda_grid = {});

}  // namespace sm
