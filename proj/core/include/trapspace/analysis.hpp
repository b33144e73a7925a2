#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "trapspace/dynamics.hpp"
#include "trapspace/network.hpp"
#include "trapspace/solver.hpp"
#include "trapspace/subspace.hpp"

namespace trapspace {

// The network left after dividing out the variables fixed by a trap space.
struct ReducedNetwork {
  Subspace fixing;
  std::vector<std::size_t> kept;  // reduced index -> parent index
  BooleanNetwork network;

  // Parent state for a reduced state: kept variables from `reduced`, the
  // rest from `fixing`.
  StateCode embed(StateCode reduced) const;
};

// Restricts every free variable's function to p and renumbers. Throws
// InputError when p is not a trap space (unless `checked` is false) or
// fixes every variable.
ReducedNetwork reduce(const BooleanNetwork& net, const Subspace& p,
                      bool checked = true,
                      std::size_t support_cap = kDefaultSupportCap);

struct CyclicWitness {
  Subspace space;
  std::vector<std::size_t> free_variables;
};

// Minimal trap spaces that are not steady states each contain at least one
// cyclic attractor.
struct CyclicAttractorBound {
  std::size_t count = 0;
  std::vector<CyclicWitness> witnesses;
  SolveStatus status = SolveStatus::kComplete;
};

CyclicAttractorBound cyclic_attractor_lower_bound(const BooleanNetwork& net,
                                                  const SolverOptions& options = {});

// Rows steady / sync-cyclic / async-cyclic, one column per maximal trap
// space. An attractor counts for a column when it lies entirely inside.
struct CommitmentTable {
  std::vector<Subspace> columns;
  std::vector<std::size_t> steady;
  std::optional<std::vector<std::size_t>> sync_cyclic;   // absent above caps
  std::optional<std::vector<std::size_t>> async_cyclic;  // absent above caps
  SolveStatus status = SolveStatus::kComplete;
};

CommitmentTable commitment_table(const BooleanNetwork& net,
                                 const SolverOptions& options = {},
                                 const DynamicsCaps& caps = {});

std::string to_csv(const CommitmentTable& table);

struct AttractorAudit {
  struct Entry {
    Subspace space;
    std::vector<std::size_t> attractors;  // indices into `attractors`
  };

  UpdateRule rule = UpdateRule::kAsynchronous;
  std::vector<std::vector<StateCode>> attractors;
  std::vector<Subspace> enclosing;  // smallest subspace around each attractor
  std::vector<Entry> minimal;       // one per minimal trap space
  std::vector<std::size_t> outside; // attractors in no minimal trap space
  SolveStatus status = SolveStatus::kComplete;

  // Every minimal trap space holds exactly one attractor that spans it.
  bool one_spanning_attractor_each() const;
};

// Throws CapExceededError above the STG cap for `rule`.
AttractorAudit attractor_trapspace_audit(const BooleanNetwork& net, UpdateRule rule,
                                         const SolverOptions& options = {},
                                         const DynamicsCaps& caps = {});

}  // namespace trapspace
