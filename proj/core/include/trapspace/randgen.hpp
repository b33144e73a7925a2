#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trapspace/network.hpp"

namespace trapspace {

// Random N-K network: Poisson in-degrees, uniform regulators, uniform truth
// tables.
struct GeneratorConfig {
  std::size_t n = 10;
  double k = 3.0;
  std::uint64_t seed = 0;
  std::size_t degree_cap = 12;
};

// Variables are named v1..vn. Each variable, in ascending order, draws from
// one std::mt19937_64 stream seeded with cfg.seed:
//   1. in-degree d by Knuth's Poisson(k) sampler on 53-bit uniforms,
//      clamped to [1, min(degree_cap, n)];
//   2. d distinct regulators by a partial Fisher-Yates shuffle of 0..n-1
//      with rejection-sampled uniform indices, then sorted ascending;
//   3. 2^d table rows in ascending order, one top bit per draw (row bit j
//      is the value of the j-th regulator).
// The function is the DNF of the true rows, or a constant.
// Throws InputError when n == 0, degree_cap == 0 or k is negative.
BooleanNetwork generate(const GeneratorConfig& cfg);

// The network together with the sampled regulators of each variable. A
// constant truth table drops its regulators from the expression but not
// from this list.
struct GeneratedNetwork {
  BooleanNetwork network;
  std::vector<std::vector<std::size_t>> regulators;
};
GeneratedNetwork generate_with_regulators(const GeneratorConfig& cfg);

}  // namespace trapspace
