#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "trapspace/expression.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace {

// Function table over an ordered list of variables. Row r assigns
// support[j] the value of bit j of r.
struct TruthTable {
  std::vector<std::size_t> support;
  Bits rows;

  std::size_t arity() const { return support.size(); }
  bool at(std::size_t row) const { return rows.test(row); }
  std::optional<bool> constant() const;
  // Whether flipping support[j] changes the value somewhere.
  bool depends_on(std::size_t j) const;
};

// Evaluates f bit-parallel over all 2^|support| rows. `support` must be
// sorted, duplicate-free and cover the syntactic support of f. Throws
// SupportTooLargeError if it has more than `cap` entries.
TruthTable tabulate(const Expression& f, std::vector<std::size_t> support,
                    std::size_t cap = kDefaultSupportCap);
TruthTable tabulate(const Expression& f, std::size_t cap = kDefaultSupportCap);

// The same function restricted to the variables it depends on.
TruthTable essential_table(const TruthTable& table);

}  // namespace trapspace
