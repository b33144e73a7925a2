#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trapspace/expression.hpp"
#include "trapspace/subspace.hpp"
#include "trapspace/truth_table.hpp"

namespace trapspace {

// Ordered variables with one update function each. Immutable once built.
class BooleanNetwork {
 public:
  // Throws InputError on empty networks, duplicate or malformed names,
  // mismatched lengths, or functions that mention undeclared variables.
  BooleanNetwork(std::vector<std::string> variables,
                 std::vector<Expression> functions);

  std::size_t size() const { return variables_.size(); }
  std::span<const std::string> variables() const { return variables_; }
  std::span<const Expression> functions() const { return functions_; }
  const std::string& name(std::size_t i) const { return variables_[i]; }
  const Expression& function(std::size_t i) const { return functions_[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const BooleanNetwork& a, const BooleanNetwork& b);

 private:
  std::vector<std::string> variables_;
  std::vector<Expression> functions_;
};

bool is_valid_identifier(std::string_view name);

// F(x): y with y(v_i) = f_i(x).
Subspace image_state(const BooleanNetwork& net, const Subspace& state);

// F[p]: fixes v_i exactly when f_i restricted to p is constant.
Subspace image_subspace(const BooleanNetwork& net, const Subspace& p,
                        std::size_t support_cap = kDefaultSupportCap);

// p is a trap space iff F[p] <= p.
bool is_trap_space(const BooleanNetwork& net, const Subspace& p,
                   std::size_t support_cap = kDefaultSupportCap);

// Every update function tabulated over its essential support, for the
// exhaustive paths (state images, brute-force trap space checks).
class TabulatedNetwork {
 public:
  explicit TabulatedNetwork(const BooleanNetwork& net,
                            std::size_t support_cap = kDefaultSupportCap);

  std::size_t size() const { return tables_.size(); }
  const TruthTable& table(std::size_t i) const { return tables_[i]; }

  // F(x) in StateCode layout; requires size() <= kMaxEnumerableVariables.
  StateCode image(StateCode state) const;
  // Same predicate as is_trap_space(net, p), decided on the tables.
  bool is_trap_space(const Subspace& p) const;

 private:
  std::vector<TruthTable> tables_;
};

}  // namespace trapspace
