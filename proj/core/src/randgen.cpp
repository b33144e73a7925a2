#include "trapspace/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

std::size_t poisson(std::mt19937_64& rng, double mean) {
  const double floor = std::exp(-mean);
  std::size_t count = 0;
  double product = uniform01(rng);
  while (product > floor) {
    ++count;
    product *= uniform01(rng);
  }
  return count;
}

Expression dnf(const std::vector<std::size_t>& regulators,
               const std::vector<bool>& table) {
  std::vector<Expression> terms;
  for (std::size_t row = 0; row < table.size(); ++row) {
    if (!table[row]) continue;
    std::vector<Expression> literals;
    for (std::size_t j = 0; j < regulators.size(); ++j) {
      Expression v = Expression::variable(regulators[j]);
      literals.push_back((row >> j) & 1 ? v : Expression::negation(v));
    }
    terms.push_back(literals.size() == 1 ? literals.front()
                                         : Expression::conjunction(std::move(literals)));
  }
  if (terms.empty()) return Expression::constant(false);
  if (terms.size() == table.size()) return Expression::constant(true);
  if (terms.size() == 1) return terms.front();
  return Expression::disjunction(std::move(terms));
}

}  // namespace

GeneratedNetwork generate_with_regulators(const GeneratorConfig& cfg) {
  if (cfg.n == 0) throw InputError("generator needs n >= 1");
  if (cfg.degree_cap == 0) throw InputError("generator needs degree cap >= 1");
  if (!(cfg.k >= 0.0) || !std::isfinite(cfg.k)) {
    throw InputError("generator needs a finite k >= 0");
  }
  const std::size_t cap = std::min(cfg.degree_cap, cfg.n);
  std::mt19937_64 rng(cfg.seed);

  std::vector<std::string> names;
  std::vector<Expression> functions;
  std::vector<std::vector<std::size_t>> regulator_lists;
  std::vector<std::size_t> pool(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    names.push_back("v" + std::to_string(i + 1));

    const std::size_t d = std::clamp<std::size_t>(poisson(rng, cfg.k), 1, cap);

    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t pick = j + uniform_below(rng, cfg.n - j);
      std::swap(pool[j], pool[pick]);
    }
    std::vector<std::size_t> regulators(pool.begin(), pool.begin() + d);
    std::sort(regulators.begin(), regulators.end());

    std::vector<bool> table(std::size_t{1} << d);
    for (std::size_t row = 0; row < table.size(); ++row) table[row] = (rng() >> 63) != 0;

    functions.push_back(dnf(regulators, table));
    regulator_lists.push_back(std::move(regulators));
  }
  return GeneratedNetwork{BooleanNetwork(std::move(names), std::move(functions)),
                          std::move(regulator_lists)};
}

BooleanNetwork generate(const GeneratorConfig& cfg) {
  return generate_with_regulators(cfg).network;
}

}  // namespace trapspace
