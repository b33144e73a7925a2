#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace trapspace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// Integer encoding of a state for exhaustive dynamics: variable v_i (0-based
// index i) sits at bit n-1-i, so v1 is the most significant position and the
// numeric order matches the printed order.
using StateCode = std::uint32_t;

// Upper bound on n for anything that enumerates states as StateCode.
inline constexpr std::size_t kMaxEnumerableVariables = 30;
inline constexpr std::size_t kDefaultStateCap = 24;

// A subspace of the state space: a set of fixed variables and their values.
// Value bits of free variables are always zero, so structural equality is
// semantic equality. A subspace with every variable fixed is a state.
//
// Text form is one character per variable over {0,1,-}; '-' marks a free
// variable and position i is variable v_{i+1}.
class Subspace {
 public:
  Subspace() = default;

  // The whole space over n variables (nothing fixed).
  explicit Subspace(std::size_t n) : fixed_(n), values_(n) {}

  static Subspace parse(std::string_view pattern);
  static Subspace from_code(std::size_t n, StateCode code);
  // Builds a canonical subspace; value bits outside `fixed` are dropped.
  static Subspace from_bits(Bits fixed, Bits values);

  std::size_t size() const { return fixed_.size(); }
  bool is_fixed(std::size_t i) const { return fixed_.test(i); }
  // Only meaningful when is_fixed(i).
  bool value(std::size_t i) const { return values_.test(i); }
  std::optional<bool> at(std::size_t i) const;

  void fix(std::size_t i, bool value);
  void release(std::size_t i);

  std::size_t fixed_count() const { return fixed_.count(); }
  std::size_t free_count() const { return size() - fixed_count(); }
  bool is_state() const { return fixed_.all(); }
  bool is_whole_space() const { return fixed_.none(); }

  const Bits& fixed_mask() const { return fixed_; }
  const Bits& values() const { return values_; }

  // Requires is_state() and size() <= kMaxEnumerableVariables.
  StateCode code() const;
  // Masks in StateCode layout: bits of fixed variables, and their values.
  std::pair<StateCode, StateCode> code_masks() const;
  bool contains(StateCode state) const;

  std::string to_string() const;

  friend bool operator==(const Subspace&, const Subspace&) = default;
  // Canonical order: the text forms compared position by position with
  // '-' < '0' < '1'.
  friend bool operator<(const Subspace& a, const Subspace& b);

 private:
  Bits fixed_;
  Bits values_;
};

// p <= q iff S[p] is contained in S[q]: every variable fixed in q is fixed
// in p at the same value.
bool subspace_leq(const Subspace& p, const Subspace& q);
bool subspace_less(const Subspace& p, const Subspace& q);

// All states of S[p] in ascending code order. Throws CapExceededError when
// p.size() exceeds `cap`.
std::vector<StateCode> referenced_states(const Subspace& p,
                                         std::size_t cap = kDefaultStateCap);

// The smallest subspace containing every state of `states` (fixes exactly
// the variables that agree across the set). Throws InputError when empty.
Subspace smallest_enclosing_subspace(std::size_t n,
                                     std::span<const StateCode> states);

std::string state_to_string(std::size_t n, StateCode state);

}  // namespace trapspace
