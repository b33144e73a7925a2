#include "trapspace/subspace.hpp"

#include <algorithm>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

StateCode position_bit(std::size_t n, std::size_t i) {
  return StateCode{1} << (n - 1 - i);
}

void require_enumerable(std::size_t n) {
  if (n > kMaxEnumerableVariables) {
    throw CapExceededError("state encoding supports at most " +
                           std::to_string(kMaxEnumerableVariables) +
                           " variables, got " + std::to_string(n));
  }
}

}  // namespace

Subspace Subspace::parse(std::string_view pattern) {
  Subspace p(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    switch (pattern[i]) {
      case '0': p.fix(i, false); break;
      case '1': p.fix(i, true); break;
      case '-': break;
      default:
        throw ParseError(std::string("invalid subspace character '") +
                             pattern[i] + "'",
                         i);
    }
  }
  return p;
}

Subspace Subspace::from_code(std::size_t n, StateCode code) {
  require_enumerable(n);
  Subspace x(n);
  x.fixed_.set();
  for (std::size_t i = 0; i < n; ++i) {
    if (code & position_bit(n, i)) x.values_.set(i);
  }
  return x;
}

Subspace Subspace::from_bits(Bits fixed, Bits values) {
  if (fixed.size() != values.size()) {
    throw InputError("subspace masks differ in width");
  }
  Subspace p;
  values &= fixed;
  p.fixed_ = std::move(fixed);
  p.values_ = std::move(values);
  return p;
}

std::optional<bool> Subspace::at(std::size_t i) const {
  if (!fixed_.test(i)) return std::nullopt;
  return values_.test(i);
}

void Subspace::fix(std::size_t i, bool value) {
  fixed_.set(i);
  values_.set(i, value);
}

void Subspace::release(std::size_t i) {
  fixed_.reset(i);
  values_.reset(i);
}

StateCode Subspace::code() const {
  if (!is_state()) throw InputError("subspace " + to_string() + " is not a state");
  require_enumerable(size());
  return code_masks().second;
}

std::pair<StateCode, StateCode> Subspace::code_masks() const {
  const std::size_t n = size();
  require_enumerable(n);
  StateCode mask = 0;
  StateCode vals = 0;
  for (std::size_t i = fixed_.find_first(); i != Bits::npos;
       i = fixed_.find_next(i)) {
    mask |= position_bit(n, i);
    if (values_.test(i)) vals |= position_bit(n, i);
  }
  return {mask, vals};
}

bool Subspace::contains(StateCode state) const {
  const auto [mask, vals] = code_masks();
  return (state & mask) == vals;
}

std::string Subspace::to_string() const {
  std::string s(size(), '-');
  for (std::size_t i = 0; i < size(); ++i) {
    if (fixed_.test(i)) s[i] = values_.test(i) ? '1' : '0';
  }
  return s;
}

bool operator<(const Subspace& a, const Subspace& b) {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    const int ra = a.is_fixed(i) ? 1 + a.value(i) : 0;
    const int rb = b.is_fixed(i) ? 1 + b.value(i) : 0;
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

bool subspace_leq(const Subspace& p, const Subspace& q) {
  if (p.size() != q.size()) {
    throw InputError("subspaces over different vocabularies");
  }
  if (!q.fixed_mask().is_subset_of(p.fixed_mask())) return false;
  // Canonical form: q's value bits vanish outside its mask.
  return ((p.values() & q.fixed_mask()) ^ q.values()).none();
}

bool subspace_less(const Subspace& p, const Subspace& q) {
  return p != q && subspace_leq(p, q);
}

std::vector<StateCode> referenced_states(const Subspace& p, std::size_t cap) {
  const std::size_t n = p.size();
  if (n > cap || n > kMaxEnumerableVariables) {
    throw CapExceededError("cannot enumerate states of " + std::to_string(n) +
                           " variables (cap " + std::to_string(cap) + ")");
  }
  const auto [mask, base] = p.code_masks();
  std::vector<StateCode> free_bits;  // ascending significance
  for (std::size_t b = 0; b < n; ++b) {
    if (!(mask & (StateCode{1} << b))) free_bits.push_back(StateCode{1} << b);
  }
  const std::uint64_t count = std::uint64_t{1} << free_bits.size();
  std::vector<StateCode> states;
  states.reserve(count);
  for (std::uint64_t r = 0; r < count; ++r) {
    StateCode x = base;
    for (std::size_t j = 0; j < free_bits.size(); ++j) {
      if (r & (std::uint64_t{1} << j)) x |= free_bits[j];
    }
    states.push_back(x);
  }
  return states;
}

Subspace smallest_enclosing_subspace(std::size_t n,
                                     std::span<const StateCode> states) {
  if (states.empty()) throw InputError("smallest subspace of an empty set");
  require_enumerable(n);
  const StateCode all = n == 0 ? 0 : (StateCode(~StateCode{0}) >> (32 - n));
  StateCode ones = all;
  StateCode zeros = all;
  for (StateCode x : states) {
    ones &= x;
    zeros &= ~x;
  }
  Subspace p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StateCode bit = position_bit(n, i);
    if (ones & bit) p.fix(i, true);
    else if (zeros & bit) p.fix(i, false);
  }
  return p;
}

std::string state_to_string(std::size_t n, StateCode state) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i) {
    if (state & position_bit(n, i)) s[i] = '1';
  }
  return s;
}

}  // namespace trapspace
