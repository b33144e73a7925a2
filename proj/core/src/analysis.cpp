#include "trapspace/analysis.hpp"

#include <algorithm>
#include <sstream>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

std::vector<std::size_t> cyclic_counts(const BooleanNetwork& net, UpdateRule rule,
                                       const std::vector<Subspace>& columns,
                                       const DynamicsCaps& caps) {
  const StateTransitionGraph stg = build_stg(net, rule, caps);
  std::vector<std::size_t> counts(columns.size(), 0);
  for (const auto& a : attractors(stg)) {
    if (a.size() < 2) continue;
    const Subspace span = smallest_enclosing_subspace(net.size(), a);
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (subspace_leq(span, columns[c])) ++counts[c];
    }
  }
  return counts;
}

void write_row(std::ostringstream& out, const char* label,
               const std::optional<std::vector<std::size_t>>& row, std::size_t width) {
  out << label;
  for (std::size_t c = 0; c < width; ++c) {
    out << ',';
    if (row) {
      out << (*row)[c];
    } else {
      out << "NA";
    }
  }
  out << '\n';
}

}  // namespace

StateCode ReducedNetwork::embed(StateCode reduced) const {
  const std::size_t n = fixing.size();
  const std::size_t m = kept.size();
  StateCode state = fixing.code_masks().second;
  for (std::size_t j = 0; j < m; ++j) {
    if ((reduced >> (m - 1 - j)) & 1) state |= StateCode{1} << (n - 1 - kept[j]);
  }
  return state;
}

ReducedNetwork reduce(const BooleanNetwork& net, const Subspace& p, bool checked,
                      std::size_t support_cap) {
  if (p.size() != net.size()) {
    throw InputError("subspace width does not match the network");
  }
  if (checked && !is_trap_space(net, p, support_cap)) {
    throw InputError("'" + p.to_string() + "' is not a trap space");
  }
  if (p.free_count() == 0) {
    throw InputError("reduction by a state leaves no variables");
  }
  std::vector<std::size_t> kept;
  std::vector<std::optional<std::size_t>> mapping(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (p.is_fixed(i)) continue;
    mapping[i] = kept.size();
    kept.push_back(i);
  }
  std::vector<std::string> names;
  std::vector<Expression> functions;
  for (std::size_t i : kept) {
    names.push_back(net.name(i));
    functions.push_back(reindex(restrict_to(net.function(i), p), mapping));
  }
  return ReducedNetwork{p, std::move(kept),
                        BooleanNetwork(std::move(names), std::move(functions))};
}

CyclicAttractorBound cyclic_attractor_lower_bound(const BooleanNetwork& net,
                                                  const SolverOptions& options) {
  const PrimeImplicantGraph graph = build_graph(net, options.support_cap);
  const TrapSpaceReport minimal = min_trap_spaces(graph, options);
  const TrapSpaceReport steady = steady_states(graph, options);

  CyclicAttractorBound bound;
  for (const Subspace& p : minimal.spaces) {
    if (std::binary_search(steady.spaces.begin(), steady.spaces.end(), p)) continue;
    CyclicWitness w{p, {}};
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p.is_fixed(i)) w.free_variables.push_back(i);
    }
    bound.witnesses.push_back(std::move(w));
  }
  bound.count = bound.witnesses.size();
  bound.status = !minimal.complete() ? minimal.status : steady.status;
  return bound;
}

CommitmentTable commitment_table(const BooleanNetwork& net, const SolverOptions& options,
                                 const DynamicsCaps& caps) {
  const PrimeImplicantGraph graph = build_graph(net, options.support_cap);
  const TrapSpaceReport maximal = max_trap_spaces(graph, options);
  const TrapSpaceReport steady = steady_states(graph, options);

  CommitmentTable table;
  table.columns = maximal.spaces;
  table.status = !maximal.complete() ? maximal.status : steady.status;
  table.steady.assign(table.columns.size(), 0);
  for (const Subspace& x : steady.spaces) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (subspace_leq(x, table.columns[c])) ++table.steady[c];
    }
  }
  if (net.size() <= caps.sync) {
    table.sync_cyclic = cyclic_counts(net, UpdateRule::kSynchronous, table.columns, caps);
  }
  if (net.size() <= caps.async) {
    table.async_cyclic = cyclic_counts(net, UpdateRule::kAsynchronous, table.columns, caps);
  }
  return table;
}

std::string to_csv(const CommitmentTable& table) {
  std::ostringstream out;
  out << "row";
  for (const Subspace& p : table.columns) out << ',' << p.to_string();
  out << '\n';
  const std::size_t width = table.columns.size();
  write_row(out, "steady", table.steady, width);
  write_row(out, "sync-cyclic", table.sync_cyclic, width);
  write_row(out, "async-cyclic", table.async_cyclic, width);
  return out.str();
}

bool AttractorAudit::one_spanning_attractor_each() const {
  return std::all_of(minimal.begin(), minimal.end(), [&](const Entry& e) {
    return e.attractors.size() == 1 && enclosing[e.attractors.front()] == e.space;
  });
}

AttractorAudit attractor_trapspace_audit(const BooleanNetwork& net, UpdateRule rule,
                                         const SolverOptions& options,
                                         const DynamicsCaps& caps) {
  AttractorAudit audit;
  audit.rule = rule;
  audit.attractors = attractors(build_stg(net, rule, caps));
  for (const auto& a : audit.attractors) {
    audit.enclosing.push_back(smallest_enclosing_subspace(net.size(), a));
  }
  const TrapSpaceReport minimal = min_trap_spaces(net, options);
  audit.status = minimal.status;
  std::vector<char> placed(audit.attractors.size(), 0);
  for (const Subspace& p : minimal.spaces) {
    AttractorAudit::Entry entry{p, {}};
    for (std::size_t k = 0; k < audit.attractors.size(); ++k) {
      if (subspace_leq(audit.enclosing[k], p)) {
        entry.attractors.push_back(k);
        placed[k] = 1;
      }
    }
    audit.minimal.push_back(std::move(entry));
  }
  for (std::size_t k = 0; k < placed.size(); ++k) {
    if (!placed[k]) audit.outside.push_back(k);
  }
  return audit;
}

}  // namespace trapspace
