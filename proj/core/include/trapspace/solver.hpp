#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trapspace/arc_set_search.hpp"
#include "trapspace/network.hpp"
#include "trapspace/primes.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace {

// How each enumeration round reaches an extremal solution.
enum class RoundStrategy {
  // Any feasible set, then shrunk (minimal mode: single-arc deletion down to
  // the greatest stable subset) or grown (maximal mode: strict supersets
  // until none exists) to an inclusion-extremal one. Scales to large graphs.
  kExtendFeasible,
  // An optimal-cardinality set, ties broken by smallest id sequence.
  kCardinalityOptimal,
};

struct SolverOptions {
  std::size_t limit = 100000;
  std::chrono::milliseconds timeout = std::chrono::seconds(600);
  std::size_t support_cap = kDefaultSupportCap;
  RoundStrategy round = RoundStrategy::kExtendFeasible;
};

enum class SolveStatus { kComplete, kLimitReached, kTimedOut };

std::string_view to_string(SolveStatus status);

// A stable and consistent set of arcs and the subspace its heads induce.
struct ArcSetSolution {
  std::vector<std::size_t> arcs;  // ascending ids
  Subspace induced;

  friend bool operator==(const ArcSetSolution&, const ArcSetSolution&) = default;
};

// No two heads assign one variable opposite values. Throws InputError on
// unknown ids.
bool is_consistent(const PrimeImplicantGraph& graph,
                   std::span<const std::size_t> arc_ids);
// Every tail literal of every member is the head of some member.
bool is_stable(const PrimeImplicantGraph& graph,
               std::span<const std::size_t> arc_ids);
// Largest stable subset of `arc_ids` (ascending ids in, ascending out).
std::vector<std::size_t> greatest_stable_subset(const PrimeImplicantGraph& graph,
                                                std::span<const std::size_t> arc_ids);
// Intersection of the heads; the whole space for the empty set. Throws
// InputError when the set is inconsistent.
Subspace induced_subspace(const PrimeImplicantGraph& graph,
                          std::span<const std::size_t> arc_ids);

struct Enumeration {
  std::vector<ArcSetSolution> solutions;
  SolveStatus status = SolveStatus::kComplete;
  std::size_t iterations = 0;
  std::uint64_t nodes = 0;

  bool complete() const { return status == SolveStatus::kComplete; }
};

// All inclusion-maximal (kMaximal) or inclusion-minimal non-empty
// (kMinimal) stable and consistent arc sets. Each round finds an extremal
// solution, emits it and adds a no-good cut forbidding its subsets
// (kMaximal) or supersets (kMinimal), until the system is infeasible.
// options.round picks how a round reaches its solution. Throws
// std::logic_error if two emitted sets are comparable.
Enumeration enumerate_extremal(const PrimeImplicantGraph& graph,
                               ArcSetExtremum mode,
                               const SolverOptions& options = {});

// True when no further solution survives the cuts of `found`.
bool cuts_exhaust(const PrimeImplicantGraph& graph, ArcSetExtremum mode,
                  std::span<const ArcSetSolution> found,
                  std::chrono::milliseconds timeout = std::chrono::seconds(600));

enum class TrapSpaceKind { kMinimal, kMaximal, kSteady, kAll };

std::string_view to_string(TrapSpaceKind kind);

struct SolveStats {
  std::size_t arc_count = 0;
  std::size_t iterations = 0;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

struct TrapSpaceReport {
  TrapSpaceKind kind = TrapSpaceKind::kMinimal;
  std::vector<Subspace> spaces;             // canonical order
  std::vector<ArcSetSolution> witnesses;    // aligned with spaces
  SolveStats stats;
  SolveStatus status = SolveStatus::kComplete;

  bool complete() const { return status == SolveStatus::kComplete; }
};

// Minimal trap spaces from the maximal arc sets. When no proper trap space
// exists the result is the whole space.
TrapSpaceReport min_trap_spaces(const PrimeImplicantGraph& graph,
                                const SolverOptions& options = {});
TrapSpaceReport min_trap_spaces(const BooleanNetwork& net,
                                const SolverOptions& options = {});

// Maximal trap spaces below the whole space, from the minimal non-empty arc
// sets. Empty when no proper trap space exists.
TrapSpaceReport max_trap_spaces(const PrimeImplicantGraph& graph,
                                const SolverOptions& options = {});
TrapSpaceReport max_trap_spaces(const BooleanNetwork& net,
                                const SolverOptions& options = {});

// States x with F(x) = x, found as the solutions that induce every variable.
TrapSpaceReport steady_states(const PrimeImplicantGraph& graph,
                              const SolverOptions& options = {});
TrapSpaceReport steady_states(const BooleanNetwork& net,
                              const SolverOptions& options = {});

// Every trap space, the whole space included, one solution per induced
// subspace.
TrapSpaceReport all_trap_spaces(const PrimeImplicantGraph& graph,
                                const SolverOptions& options = {});
TrapSpaceReport all_trap_spaces(const BooleanNetwork& net,
                                const SolverOptions& options = {});

}  // namespace trapspace
