#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trapspace/network.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace {

enum class UpdateRule { kSynchronous, kAsynchronous };

std::string_view to_string(UpdateRule rule);

// Largest networks the exhaustive routines accept.
struct DynamicsCaps {
  std::size_t sync = 24;
  std::size_t async = 20;
  std::size_t brute_force = 12;
  std::size_t support = kDefaultSupportCap;
};

// Explicit state transition graph over all 2^n states. Immutable.
class StateTransitionGraph {
 public:
  UpdateRule rule() const { return rule_; }
  std::size_t variable_count() const { return n_; }
  std::size_t state_count() const { return std::size_t{1} << n_; }

  // Successors of x in ascending order.
  std::span<const StateCode> successors(StateCode x) const;

 private:
  friend StateTransitionGraph build_stg(const BooleanNetwork&, UpdateRule,
                                        const DynamicsCaps&);

  UpdateRule rule_ = UpdateRule::kSynchronous;
  std::size_t n_ = 0;
  std::vector<std::uint32_t> offsets_;  // empty for the synchronous rule
  std::vector<StateCode> targets_;
};

// Throws CapExceededError when n exceeds the cap for `rule`.
StateTransitionGraph build_stg(const BooleanNetwork& net, UpdateRule rule,
                               const DynamicsCaps& caps = {});

// Terminal strongly connected components, each sorted ascending, the list
// sorted by smallest member.
std::vector<std::vector<StateCode>> attractors(const StateTransitionGraph& stg);

// States with a self-loop that is their only successor.
std::vector<StateCode> fixed_points(const StateTransitionGraph& stg);

// No transition leaves `states`. Throws InputError on an empty set.
bool is_trap_set(const StateTransitionGraph& stg, std::span<const StateCode> states);

enum class TrapSpaceSelection { kAll, kMinimal, kMaximal };

// Keeps the inclusion-minimal or inclusion-maximal members (the whole space
// never counts as maximal) and sorts canonically.
std::vector<Subspace> select_extremal(std::vector<Subspace> trap_spaces,
                                      TrapSpaceSelection selection);

// Tests all 3^n subspaces. Throws CapExceededError above caps.brute_force.
std::vector<Subspace> brute_force_trap_spaces(const BooleanNetwork& net,
                                              TrapSpaceSelection selection,
                                              const DynamicsCaps& caps = {});

// All subspaces whose states form a trap set of `stg`, canonically sorted.
std::vector<Subspace> trap_set_subspaces(const StateTransitionGraph& stg);

}  // namespace trapspace
