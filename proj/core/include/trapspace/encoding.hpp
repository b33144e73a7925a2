#pragma once

#include <string>
#include <vector>

#include "trapspace/arc_set_search.hpp"
#include "trapspace/primes.hpp"

namespace trapspace {

// Atom-safe names for the network's variables: lowercase, non-alphanumerics
// mapped to '_', a leading 'v' added when the result would not start with a
// letter, and _2, _3, ... appended on collisions.
std::vector<std::string> atom_names(const BooleanNetwork& net);

// Answer set program for the stable and consistent arc sets. `sense` is the
// inclusion extremum the downstream solver must enumerate; kMinimal also
// forbids the empty set. Deterministic for a given graph.
std::string emit_asp(const PrimeImplicantGraph& graph, ArcSetExtremum sense);

// CPLEX LP text for the 0-1 program. kMaximal maximizes the arc count,
// kMinimal minimizes it subject to a non-empty solution.
std::string emit_ilp(const PrimeImplicantGraph& graph, ArcSetExtremum sense);

}  // namespace trapspace
