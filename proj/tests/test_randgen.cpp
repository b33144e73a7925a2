#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "trapspace/error.hpp"
#include "trapspace/randgen.hpp"

namespace trapspace {
namespace {

double poisson_pmf(double k, std::size_t d) {
  return std::exp(-k + static_cast<double>(d) * std::log(k) - std::lgamma(d + 1.0));
}

TEST_CASE("degree clamp floor") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GeneratedNetwork g = generate_with_regulators(GeneratorConfig{1, 0.0, seed, 12});
    REQUIRE(g.regulators.size() == 1);
    CHECK(g.regulators[0] == std::vector<std::size_t>{0});
    CHECK(g.network.name(0) == "v1");
  }
}

TEST_CASE("generation is deterministic") {
  const GeneratorConfig cfg{30, 3.0, 99, 12};
  CHECK(generate(cfg) == generate(cfg));
  CHECK_FALSE(generate(cfg) == generate(GeneratorConfig{30, 3.0, 100, 12}));
}

TEST_CASE("golden network for a fixed seed") {
  std::ifstream in(testing::data_path("random_n8_k3_seed42.bnet"));
  std::stringstream golden;
  golden << in.rdbuf();
  CHECK(format_network(generate(GeneratorConfig{8, 3.0, 42, 12})) == golden.str());
}

TEST_CASE("regulators and expressions agree") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GeneratedNetwork g = generate_with_regulators(GeneratorConfig{15, 3.0, seed, 5});
    for (std::size_t i = 0; i < g.network.size(); ++i) {
      const auto& regs = g.regulators[i];
      CHECK(regs.size() >= 1);
      CHECK(regs.size() <= 5);
      CHECK(std::is_sorted(regs.begin(), regs.end()));
      CHECK(std::adjacent_find(regs.begin(), regs.end()) == regs.end());
      const Expression& f = g.network.function(i);
      if (!f.is_constant()) CHECK(syntactic_support(f) == regs);
    }
  }
}

TEST_CASE("mean in-degree") {
  const GeneratedNetwork g = generate_with_regulators(GeneratorConfig{1000, 3.0, 1, 12});
  double total = 0.0;
  for (const auto& regs : g.regulators) total += static_cast<double>(regs.size());
  const double mean = total / 1000.0;
  CHECK(mean > 2.8);
  CHECK(mean < 3.2);
}

TEST_CASE("in-degree histogram matches the clamped Poisson law") {
  const std::size_t n = 10000;
  const double k = 3.0;
  const GeneratedNetwork g = generate_with_regulators(GeneratorConfig{n, k, 2, 12});
  std::vector<double> observed(13, 0.0);
  for (const auto& regs : g.regulators) observed[regs.size()] += 1.0;
  std::vector<double> expected(13, 0.0);
  double tail = 1.0;
  for (std::size_t d = 0; d <= 11; ++d) {
    const double p = poisson_pmf(k, d);
    tail -= p;
    expected[std::max<std::size_t>(d, 1)] += p * n;
  }
  expected[12] += tail * n;
  // Pool sparse bins from 7 upward.
  double chi2 = 0.0;
  double obs_tail = 0.0, exp_tail = 0.0;
  for (std::size_t d = 1; d <= 12; ++d) {
    if (d >= 7) {
      obs_tail += observed[d];
      exp_tail += expected[d];
      continue;
    }
    chi2 += (observed[d] - expected[d]) * (observed[d] - expected[d]) / expected[d];
  }
  chi2 += (obs_tail - exp_tail) * (obs_tail - exp_tail) / exp_tail;
  MESSAGE("chi-square over 7 bins: " << chi2);
  // 6 degrees of freedom; 22.46 is the 0.999 quantile. Informational only.
  WARN(chi2 < 22.46);
  CHECK(observed[0] == 0.0);
}

TEST_CASE("invalid configurations") {
  CHECK_THROWS_AS(generate(GeneratorConfig{0, 3.0, 1, 12}), InputError);
  CHECK_THROWS_AS(generate(GeneratorConfig{5, -1.0, 1, 12}), InputError);
  CHECK_THROWS_AS(generate(GeneratorConfig{5, 3.0, 1, 0}), InputError);
  CHECK_THROWS_AS(generate(GeneratorConfig{5, std::nan(""), 1, 12}), InputError);
  // A cap above n is clamped to n.
  const GeneratedNetwork g = generate_with_regulators(GeneratorConfig{3, 50.0, 1, 12});
  for (const auto& regs : g.regulators) CHECK(regs.size() == 3);
}

}  // namespace
}  // namespace trapspace
