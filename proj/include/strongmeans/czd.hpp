#pragma once

#include <vector>

#include "strongmeans/dyadic.hpp"
#include "strongmeans/grid.hpp"

namespace sm {

struct CZDecomposition {
    double lambda = 0;
    int d = 1;
    int J = 0;
    std::vector<DyadicCube> bad;  // breadth-first order
    std::vector<double> bad_avg;  // grid average of |f| on each bad cell
    const GridFunction* source = nullptr;

    std::vector<DyadicInterval> intervals() const;
    double bad_measure() const;
};

CZDecomposition decompose(const GridFunction& f, double lambda);

struct ScaleSplit {
    std::vector<DyadicCube> B1;
    std::vector<DyadicCube> B2;
};

// B1: cells of measure > N^-d.
ScaleSplit split_by_scale(const CZDecomposition& cz, long N);

std::vector<unsigned char> bad_mask(const CZDecomposition& cz);
GridFunction good_part(const CZDecomposition& cz);
GridFunction bad_part(const CZDecomposition& cz);

// Invariants recomputed directly from the samples, without the averaging tree.
struct CZAudit {
    bool disjoint = true;
    bool maximal = true;
    bool avg_bounds = true;  // lambda < avg <= 2^d lambda
    bool weak_type = true;   // sum |I| <= ||f||_1 / lambda, exact
    bool reconstruction = true;
    bool good_bound = true;  // |g| <= lambda
    bool ok() const { return disjoint && maximal && avg_bounds && weak_type && reconstruction && good_bound; }
};

CZAudit audit(const CZDecomposition& cz);

// Every bad cell at the higher height lies inside the bad set at the lower one.
bool nested(const CZDecomposition& lower, const CZDecomposition& higher);

}  // namespace sm
