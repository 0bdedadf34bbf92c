#pragma once

#include <cstdint>
#include <vector>

#include "strongmeans/dyadic.hpp"

namespace sm {

struct DilatedFamily {
    std::vector<DyadicCube> originals;
    std::vector<ScaledBox> dilates;
    std::vector<std::vector<std::size_t>> components;  // indices into dilates
};

std::vector<std::vector<DyadicInterval>> partition_nonadjacent(const std::vector<DyadicInterval>& G,
                                                               int jmax = kDefaultJmax);

// 1-d components by endpoint sweep around T.
DilatedFamily dilated_components(const std::vector<DyadicInterval>& G, Factor c = kNineEighths,
                                 int jmax = kDefaultJmax);
// d-dim components: dilates joined when all axis projections meet.
DilatedFamily dilated_components_cubes(const std::vector<DyadicCube>& G, Factor c = kNineEighths,
                                       int jmax = kDefaultJmax);

bool chain_check(const DyadicInterval& I1, const DyadicInterval& I2, const DyadicInterval& I3,
                 int jmax = kDefaultJmax);

struct CoveringResult {
    bool holds = true;
    std::vector<std::size_t> violating;  // component indices
    std::size_t literal_violations = 0;  // against 4x the largest original
    std::size_t components = 0;
    std::size_t largest_component = 0;
};

CoveringResult verify_covering(const std::vector<DyadicInterval>& G, int jmax = kDefaultJmax);
CoveringResult verify_covering_cubes(const std::vector<DyadicCube>& G, int jmax = kDefaultJmax);

struct ChainStats {
    std::uint64_t chains = 0;
    std::uint64_t exceptions = 0;
};

// Every valid chain with all three cells at level <= max_level.
ChainStats enumerate_chains(int max_level, int jmax = kDefaultJmax);

std::vector<DyadicInterval> random_family_1d(std::uint64_t seed, int J, int max_count, int jmax = kDefaultJmax);
std::vector<DyadicCube> random_family_cubes(std::uint64_t seed, int d, int J, int max_count,
                                            int jmax = kDefaultJmax);

struct CoveringSuiteResult {
    std::uint64_t families = 0;
    std::uint64_t violations = 0;
    std::uint64_t literal_violations = 0;
    std::uint64_t components = 0;
    std::uint64_t families_with_merges = 0;
    std::uint64_t max_component = 0;
};

CoveringSuiteResult covering_suite_1d(std::uint64_t seed, std::uint64_t trials, int J, int max_count,
                                      int jmax = kDefaultJmax);
CoveringSuiteResult covering_suite_cubes(std::uint64_t seed, std::uint64_t trials, int d, int J, int max_count,
                                         int jmax = kDefaultJmax);

}  // namespace sm
