#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "strongmeans/grid.hpp"

namespace sm {

struct NamedFunction {
    std::string id;
    GridFunction f;
};

// 2^J chi of the first cell.
GridFunction spike(int J, int d = 1);
GridFunction tensor(const GridFunction& a, const GridFunction& b);
GridFunction exponential(int J, long m);

// k spikes, integer weights summing to 2^bits, so ||f||_1 = 1 exactly.
GridFunction multi_spike(std::uint64_t seed, int J, int k);
// Real trig polynomial of the given degree, L1-normalized and rounded to multiples of 2^-24.
GridFunction random_trig(std::uint64_t seed, int J, long degree);
GridFunction abs_noise(std::uint64_t seed, int J);

// families: "one", "spike", "multispike", "trig", "noise", and for d = 2 "tensor_spike",
// "tensor_multispike", "tensor_trig", "one2".
std::vector<NamedFunction> make_corpus(const std::vector<std::string>& families, int J, int count, std::uint64_t seed);

const std::vector<std::string>& known_families();

}  // namespace sm
