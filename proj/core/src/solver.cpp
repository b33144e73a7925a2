#include "trapspace/solver.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

bool is_subset(std::span<const std::size_t> a, std::span<const std::size_t> b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Deletes arcs in ascending id order while a non-empty stable subset
// survives. Every remaining arc was tested against a superset of the final
// set, so no proper non-empty subset of the result is stable.
std::vector<std::size_t> shrink_to_minimal(const PrimeImplicantGraph& graph,
                                           std::vector<std::size_t> arcs) {
  for (std::size_t i = 0; i < arcs.size();) {
    std::vector<std::size_t> rest;
    rest.reserve(arcs.size() - 1);
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      if (j != i) rest.push_back(arcs[j]);
    }
    std::vector<std::size_t> core = greatest_stable_subset(graph, rest);
    if (core.empty()) {
      ++i;
      continue;
    }
    const std::size_t tested = arcs[i];
    arcs = std::move(core);
    i = static_cast<std::size_t>(
        std::upper_bound(arcs.begin(), arcs.end(), tested) - arcs.begin());
  }
  return arcs;
}

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SolveStatus status_of(ArcSetProblem::Outcome outcome) {
  return outcome == ArcSetProblem::Outcome::kTimedOut ? SolveStatus::kTimedOut
                                                      : SolveStatus::kComplete;
}

// Deduplicates induced spaces (keeping the lexicographically smallest
// witness), keeps the inclusion-extremal ones and sorts canonically.
TrapSpaceReport collect(TrapSpaceKind kind, const Enumeration& e,
                        std::size_t arc_count, double elapsed_ms) {
  std::map<Subspace, ArcSetSolution> by_space;
  for (const ArcSetSolution& s : e.solutions) {
    auto [it, inserted] = by_space.emplace(s.induced, s);
    if (!inserted && s.arcs < it->second.arcs) it->second = s;
  }
  std::vector<Subspace> spaces;
  for (const auto& [p, w] : by_space) spaces.push_back(p);

  TrapSpaceReport report;
  report.kind = kind;
  for (const auto& [p, w] : by_space) {
    const bool dominated = std::any_of(spaces.begin(), spaces.end(), [&](const Subspace& q) {
      return kind == TrapSpaceKind::kMinimal ? subspace_less(q, p)
                                             : subspace_less(p, q);
    });
    if (dominated) continue;
    report.spaces.push_back(p);
    report.witnesses.push_back(w);
  }
  report.status = e.status;
  report.stats = SolveStats{arc_count, e.iterations, e.nodes, elapsed_ms};
  return report;
}

// Replaces `found` by strict supersets until none is feasible. Each
// intermediate set gets its subset cut right away: its subsets lie below the
// maximal set being built, so none of them is maximal. On kFound the cut for
// the final set is already in place.
ArcSetProblem::Outcome grow_to_maximal(ArcSetProblem& problem,
                                       Clock::time_point deadline,
                                       ArcSetProblem::Assignment* found) {
  while (true) {
    problem.forbid_subsets_of(found->arcs);
    ArcSetProblem::Assignment larger;
    const auto outcome = problem.find_feasible_selecting(found->arcs, deadline, &larger);
    if (outcome == ArcSetProblem::Outcome::kInfeasible) return ArcSetProblem::Outcome::kFound;
    if (outcome == ArcSetProblem::Outcome::kTimedOut) return outcome;
    *found = std::move(larger);
  }
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kComplete: return "complete";
    case SolveStatus::kLimitReached: return "limit-reached";
    case SolveStatus::kTimedOut: return "timed-out";
  }
  return "unknown";
}

std::string_view to_string(TrapSpaceKind kind) {
  switch (kind) {
    case TrapSpaceKind::kMinimal: return "min";
    case TrapSpaceKind::kMaximal: return "max";
    case TrapSpaceKind::kSteady: return "steady";
    case TrapSpaceKind::kAll: return "all";
  }
  return "unknown";
}

bool is_consistent(const PrimeImplicantGraph& graph,
                   std::span<const std::size_t> arc_ids) {
  std::vector<signed char> seen(graph.variable_count(), -1);
  bool ok = true;
  for (std::size_t id : arc_ids) {
    const Literal& h = graph.arc(id).head;
    signed char& s = seen[h.variable];
    if (s >= 0 && s != static_cast<signed char>(h.value)) ok = false;
    s = static_cast<signed char>(h.value);
  }
  return ok;
}

bool is_stable(const PrimeImplicantGraph& graph,
               std::span<const std::size_t> arc_ids) {
  std::vector<char> headed(2 * graph.variable_count(), 0);
  for (std::size_t id : arc_ids) headed[graph.arc(id).head.index()] = 1;
  for (std::size_t id : arc_ids) {
    for (const Literal& t : graph.arc(id).tail) {
      if (!headed[t.index()]) return false;
    }
  }
  return true;
}

std::vector<std::size_t> greatest_stable_subset(const PrimeImplicantGraph& graph,
                                                std::span<const std::size_t> arc_ids) {
  const std::size_t m = graph.size();
  std::vector<char> alive(m + 1, 0);
  std::vector<std::size_t> producers(2 * graph.variable_count(), 0);
  for (std::size_t id : arc_ids) {
    alive[id] = 1;
    ++producers[graph.arc(id).head.index()];
  }
  std::vector<std::size_t> queue;
  for (std::size_t id : arc_ids) {
    for (const Literal& t : graph.arc(id).tail) {
      if (producers[t.index()] == 0) {
        queue.push_back(id);
        break;
      }
    }
  }
  // Killing an arc may leave its head without producers, which kills every
  // surviving arc that needs that head.
  while (!queue.empty()) {
    const std::size_t id = queue.back();
    queue.pop_back();
    if (!alive[id]) continue;
    alive[id] = 0;
    const Literal& h = graph.arc(id).head;
    if (--producers[h.index()] != 0) continue;
    for (std::size_t other : arc_ids) {
      if (!alive[other]) continue;
      const auto& tail = graph.arc(other).tail;
      if (std::find(tail.begin(), tail.end(), h) != tail.end()) queue.push_back(other);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t id : arc_ids) {
    if (alive[id]) out.push_back(id);
  }
  return out;
}

Subspace induced_subspace(const PrimeImplicantGraph& graph,
                          std::span<const std::size_t> arc_ids) {
  if (!is_consistent(graph, arc_ids)) {
    throw InputError("induced subspace of an inconsistent arc set");
  }
  Subspace p(graph.variable_count());
  for (std::size_t id : arc_ids) {
    const Literal& h = graph.arc(id).head;
    p.fix(h.variable, h.value);
  }
  return p;
}

Enumeration enumerate_extremal(const PrimeImplicantGraph& graph,
                               ArcSetExtremum mode,
                               const SolverOptions& options) {
  const Clock::time_point deadline = Clock::now() + options.timeout;
  ArcSetProblem problem(graph);
  if (mode == ArcSetExtremum::kMinimal) problem.require_nonempty();

  const bool extend = options.round == RoundStrategy::kExtendFeasible;
  const auto order = mode == ArcSetExtremum::kMinimal ? ArcSetProblem::Order::kSeedClosure
                                                      : ArcSetProblem::Order::kInducedLiterals;
  Enumeration e;
  while (true) {
    ArcSetProblem::Assignment found;
    auto outcome = extend ? problem.find_feasible(deadline, &found, order)
                          : problem.find_optimal(mode, deadline, &found);
    ++e.iterations;
    if (outcome == ArcSetProblem::Outcome::kFound && extend &&
        mode == ArcSetExtremum::kMaximal) {
      outcome = grow_to_maximal(problem, deadline, &found);
    }
    if (outcome != ArcSetProblem::Outcome::kFound) {
      e.status = status_of(outcome);
      break;
    }
    if (e.solutions.size() >= options.limit) {
      e.status = SolveStatus::kLimitReached;
      break;
    }
    if (extend && mode == ArcSetExtremum::kMinimal) {
      found.arcs = shrink_to_minimal(graph, std::move(found.arcs));
      found.induced = induced_subspace(graph, found.arcs);
    }
    for (const ArcSetSolution& earlier : e.solutions) {
      if (is_subset(found.arcs, earlier.arcs) || is_subset(earlier.arcs, found.arcs)) {
        throw std::logic_error("cut iteration emitted comparable arc sets");
      }
    }
    if (mode == ArcSetExtremum::kMinimal) {
      problem.forbid_supersets_of(found.arcs);
    } else if (!extend) {
      problem.forbid_subsets_of(found.arcs);
    }
    e.solutions.push_back(ArcSetSolution{std::move(found.arcs), std::move(found.induced)});
  }
  e.nodes = problem.nodes();
  return e;
}

bool cuts_exhaust(const PrimeImplicantGraph& graph, ArcSetExtremum mode,
                  std::span<const ArcSetSolution> found,
                  std::chrono::milliseconds timeout) {
  ArcSetProblem problem(graph);
  if (mode == ArcSetExtremum::kMinimal) problem.require_nonempty();
  for (const ArcSetSolution& s : found) {
    if (mode == ArcSetExtremum::kMaximal) {
      problem.forbid_subsets_of(s.arcs);
    } else {
      problem.forbid_supersets_of(s.arcs);
    }
  }
  const auto order = mode == ArcSetExtremum::kMinimal ? ArcSetProblem::Order::kSeedClosure
                                                      : ArcSetProblem::Order::kInducedLiterals;
  const auto outcome = problem.find_feasible(Clock::now() + timeout, nullptr, order);
  if (outcome == ArcSetProblem::Outcome::kTimedOut) {
    throw ResourceLimitError("completeness probe timed out");
  }
  return outcome == ArcSetProblem::Outcome::kInfeasible;
}

TrapSpaceReport min_trap_spaces(const PrimeImplicantGraph& graph,
                                const SolverOptions& options) {
  const Clock::time_point start = Clock::now();
  const Enumeration e = enumerate_extremal(graph, ArcSetExtremum::kMaximal, options);
  TrapSpaceReport report = collect(TrapSpaceKind::kMinimal, e, graph.size(), 0.0);
  if (report.spaces.empty() && report.complete()) {
    report.spaces.push_back(Subspace(graph.variable_count()));
    report.witnesses.push_back(ArcSetSolution{{}, Subspace(graph.variable_count())});
  }
  report.stats.elapsed_ms = millis_since(start);
  return report;
}

TrapSpaceReport max_trap_spaces(const PrimeImplicantGraph& graph,
                                const SolverOptions& options) {
  const Clock::time_point start = Clock::now();
  const Enumeration e = enumerate_extremal(graph, ArcSetExtremum::kMinimal, options);
  TrapSpaceReport report = collect(TrapSpaceKind::kMaximal, e, graph.size(), 0.0);
  report.stats.elapsed_ms = millis_since(start);
  return report;
}

namespace {

// One solution per distinct induced subspace, cutting each one with `cut`.
template <typename Cut>
TrapSpaceReport enumerate_induced(const PrimeImplicantGraph& graph, TrapSpaceKind kind,
                                  ArcSetProblem& problem, const SolverOptions& options,
                                  Cut cut) {
  const Clock::time_point start = Clock::now();
  const Clock::time_point deadline = start + options.timeout;
  TrapSpaceReport report;
  report.kind = kind;
  std::vector<ArcSetSolution> found;
  std::size_t iterations = 0;
  while (true) {
    ArcSetProblem::Assignment a;
    const auto outcome = problem.find_feasible(deadline, &a);
    ++iterations;
    if (outcome != ArcSetProblem::Outcome::kFound) {
      report.status = status_of(outcome);
      break;
    }
    if (found.size() >= options.limit) {
      report.status = SolveStatus::kLimitReached;
      break;
    }
    cut(a.induced);
    found.push_back(ArcSetSolution{std::move(a.arcs), std::move(a.induced)});
  }
  std::sort(found.begin(), found.end(),
            [](const ArcSetSolution& a, const ArcSetSolution& b) {
              return a.induced < b.induced;
            });
  for (ArcSetSolution& s : found) {
    report.spaces.push_back(s.induced);
    report.witnesses.push_back(std::move(s));
  }
  report.stats = SolveStats{graph.size(), iterations, problem.nodes(), millis_since(start)};
  return report;
}

}  // namespace

TrapSpaceReport steady_states(const PrimeImplicantGraph& graph,
                              const SolverOptions& options) {
  ArcSetProblem problem(graph);
  problem.require_all_fixed();
  return enumerate_induced(graph, TrapSpaceKind::kSteady, problem, options,
                           [&](const Subspace& p) { problem.forbid_induced(p); });
}

TrapSpaceReport all_trap_spaces(const PrimeImplicantGraph& graph,
                                const SolverOptions& options) {
  ArcSetProblem problem(graph);
  return enumerate_induced(graph, TrapSpaceKind::kAll, problem, options,
                           [&](const Subspace& p) { problem.forbid_induced_exactly(p); });
}

TrapSpaceReport min_trap_spaces(const BooleanNetwork& net,
                                const SolverOptions& options) {
  return min_trap_spaces(build_graph(net, options.support_cap), options);
}

TrapSpaceReport max_trap_spaces(const BooleanNetwork& net,
                                const SolverOptions& options) {
  return max_trap_spaces(build_graph(net, options.support_cap), options);
}

TrapSpaceReport all_trap_spaces(const BooleanNetwork& net,
                                const SolverOptions& options) {
  return all_trap_spaces(build_graph(net, options.support_cap), options);
}

TrapSpaceReport steady_states(const BooleanNetwork& net,
                              const SolverOptions& options) {
  return steady_states(build_graph(net, options.support_cap), options);
}

}  // namespace trapspace
