#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "trapspace/expression.hpp"
#include "trapspace/network.hpp"
#include "trapspace/network_format.hpp"
#include "trapspace/randgen.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(TRAPSPACE_TEST_DATA_DIR) / name;
}

// f1 = v1 | v2, f2 = v1 & v4, f3 = !v1 & v4, f4 = !v3.
inline BooleanNetwork running_example() {
  return parse_network(
      "targets, factors\n"
      "v1, v1 | v2\n"
      "v2, v1 & v4\n"
      "v3, !v1 & v4\n"
      "v4, !v3\n");
}

// f1 = !v2, f2 = v1: no proper trap space.
inline BooleanNetwork negation_cycle() {
  return parse_network("v1, !v2\nv2, v1\n");
}

inline std::vector<Subspace> spaces(std::initializer_list<const char*> patterns) {
  std::vector<Subspace> out;
  for (const char* p : patterns) out.push_back(Subspace::parse(p));
  return out;
}

inline std::vector<std::string> texts(const std::vector<Subspace>& ps) {
  std::vector<std::string> out;
  for (const Subspace& p : ps) out.push_back(p.to_string());
  return out;
}

// Random k=3 networks with n cycling through [n_min, n_max].
inline std::vector<BooleanNetwork> corpus(std::size_t count, std::size_t n_min,
                                          std::size_t n_max, std::uint64_t seed) {
  std::vector<BooleanNetwork> nets;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t n = n_min + i % (n_max - n_min + 1);
    nets.push_back(generate(GeneratorConfig{n, 3.0, seed + i, 12}));
  }
  return nets;
}

// F(x) for every state, by evaluating the expressions directly.
inline std::vector<StateCode> image_table(const BooleanNetwork& net) {
  const std::size_t n = net.size();
  std::vector<StateCode> image(std::size_t{1} << n);
  for (StateCode x = 0; x < image.size(); ++x) {
    image[x] = image_state(net, Subspace::from_code(n, x)).code();
  }
  return image;
}

// Every subspace over n variables, in no particular order.
inline std::vector<Subspace> all_subspaces(std::size_t n) {
  std::vector<Subspace> out{Subspace(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t size = out.size();
    for (std::size_t j = 0; j < size; ++j) {
      for (bool c : {false, true}) {
        Subspace p = out[j];
        p.fix(i, c);
        out.push_back(p);
      }
    }
  }
  return out;
}

// Trap spaces by their state definition: no state of S[p] has an image
// that leaves p on a fixed variable. Shares nothing with the prime or
// restriction machinery.
inline std::vector<Subspace> trap_spaces_by_states(const BooleanNetwork& net) {
  const std::vector<StateCode> image = image_table(net);
  std::vector<Subspace> out;
  for (const Subspace& p : all_subspaces(net.size())) {
    const auto [mask, values] = p.code_masks();
    bool trap = true;
    for (StateCode x : referenced_states(p)) {
      if ((image[x] & mask) != values) {
        trap = false;
        break;
      }
    }
    if (trap) out.push_back(p);
  }
  return out;
}

}  // namespace trapspace::testing
