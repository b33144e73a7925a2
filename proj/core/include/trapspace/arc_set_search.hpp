#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "trapspace/primes.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace {

using Clock = std::chrono::steady_clock;

// Direction of the cardinality objective over selected arcs.
enum class ArcSetExtremum { kMinimal, kMaximal };

// The 0-1 system over a prime implicant graph: one indicator per arc (is the
// arc selected) and one per literal (is the literal induced), with
//   head linking  - a literal is induced iff some selected arc heads it,
//   stability     - a selected arc's tail literals are all induced,
//   consistency   - a variable is never induced at both values,
// plus optional side constraints and no-good cuts. Every search is complete
// and deterministic. Feasibility searches learn conflict clauses and
// backjump; the learned clauses stay valid for later rounds because cuts
// only ever shrink the feasible region. Optimizing searches use
// branch-and-bound with chronological backtracking.
class ArcSetProblem {
 public:
  explicit ArcSetProblem(const PrimeImplicantGraph& graph);
  ~ArcSetProblem();
  ArcSetProblem(ArcSetProblem&&) noexcept;
  ArcSetProblem& operator=(ArcSetProblem&&) noexcept;

  // At least one arc selected.
  void require_nonempty();
  // Every variable induced, so solutions are steady states.
  void require_all_fixed();
  // Cut after a maximization round: some arc outside `arc_ids` is selected.
  void forbid_subsets_of(std::span<const std::size_t> arc_ids);
  // Cut after a minimization round: some arc of `arc_ids` is not selected.
  void forbid_supersets_of(std::span<const std::size_t> arc_ids);
  // Excludes every solution whose induced subspace fixes all literals of p.
  void forbid_induced(const Subspace& p);
  // Excludes the solutions inducing exactly p.
  void forbid_induced_exactly(const Subspace& p);

  struct Assignment {
    std::vector<std::size_t> arcs;  // ascending ids
    Subspace induced;
  };

  enum class Outcome { kFound, kInfeasible, kTimedOut };

  enum class Order {
    kInducedLiterals,  // decide the induced subspace first
    kSeedClosure,      // select a seed arc, then support its tail literals
  };

  // Any solution of the current system.
  Outcome find_feasible(Clock::time_point deadline, Assignment* out,
                        Order order = Order::kInducedLiterals);

  // Any solution selecting every arc of `arc_ids`. The requirement holds for
  // this call only.
  Outcome find_feasible_selecting(std::span<const std::size_t> arc_ids,
                                  Clock::time_point deadline, Assignment* out,
                                  Order order = Order::kInducedLiterals);

  // A solution optimizing the number of selected arcs; among optimal ones
  // the lexicographically smallest ascending id sequence.
  Outcome find_optimal(ArcSetExtremum sense, Clock::time_point deadline,
                       Assignment* out);

  // Search nodes (decisions) spent so far.
  std::uint64_t nodes() const;

 private:
  class Engine;
  void check_width(const Subspace& p) const;
  std::unique_ptr<Engine> engine_;
};

}  // namespace trapspace
