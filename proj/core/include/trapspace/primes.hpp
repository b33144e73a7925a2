#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "trapspace/expression.hpp"
#include "trapspace/network.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace {

// A single-variable subspace v = value.
struct Literal {
  std::size_t variable = 0;
  bool value = false;

  // Dense index 2*variable + value.
  std::size_t index() const { return 2 * variable + (value ? 1 : 0); }
  static Literal from_index(std::size_t index) {
    return Literal{index / 2, (index & 1) != 0};
  }

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Order used for arc numbering: variable ascending, then value 1 before 0.
bool literal_before(const Literal& a, const Literal& b);

// (p, c, v): restricting the target's function to p yields the constant c,
// and no strictly larger subspace does.
struct PrimeImplicant {
  Subspace subspace;
  bool value = false;
  std::size_t target = 0;

  friend bool operator==(const PrimeImplicant&, const PrimeImplicant&) = default;
};

// One arc per prime implicant: the tail is the implicant split into
// literals, the head is the literal it forces.
struct HyperArc {
  std::size_t id = 0;  // 1-based, in canonical order
  std::vector<Literal> tail;  // sorted by literal_before
  Literal head;

  friend bool operator==(const HyperArc&, const HyperArc&) = default;
};

class PrimeImplicantGraph {
 public:
  PrimeImplicantGraph(BooleanNetwork network, std::vector<HyperArc> arcs);

  const BooleanNetwork& network() const { return network_; }
  std::size_t variable_count() const { return network_.size(); }
  std::size_t size() const { return arcs_.size(); }
  std::span<const HyperArc> arcs() const { return arcs_; }
  // Throws InputError on ids outside [1, size()].
  const HyperArc& arc(std::size_t id) const;
  // Ids of arcs whose head is `head`.
  std::span<const std::size_t> arcs_with_head(Literal head) const {
    return by_head_[head.index()];
  }

 private:
  BooleanNetwork network_;
  std::vector<HyperArc> arcs_;
  std::vector<std::vector<std::size_t>> by_head_;
};

// c-prime implicants of f for the variable `target` of an n-variable
// network. A function that is constantly c yields the single implicant
// fixing only the target at c; constantly !c yields none. Otherwise the
// primes are computed by cube merging over the essential support.
std::vector<PrimeImplicant> c_prime_implicants(
    const Expression& f, bool c, std::size_t target, std::size_t n,
    std::size_t support_cap = kDefaultSupportCap);

PrimeImplicantGraph build_graph(const BooleanNetwork& net,
                                std::size_t support_cap = kDefaultSupportCap);

// "v1=0,v2=0" style rendering.
std::string format_literals(std::span<const Literal> literals,
                            const BooleanNetwork& net);
// "<id> <tail> -> <head>", one line of the `primes` listing.
std::string format_arc(const HyperArc& arc, const BooleanNetwork& net);

}  // namespace trapspace
