#include "trapspace/dynamics.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();

void check_cap(std::size_t n, std::size_t cap, std::string_view what) {
  if (n > cap || n > kMaxEnumerableVariables) {
    throw CapExceededError(std::string(what) + " needs n <= " + std::to_string(cap) +
                           ", network has " + std::to_string(n) + " variables");
  }
}

// Visits the 3^n subspaces over n variables.
template <typename Visit>
void for_each_subspace(std::size_t n, Visit visit) {
  std::vector<int> digit(n, 0);  // 0 free, 1 fixed to 0, 2 fixed to 1
  Subspace p(n);
  while (true) {
    visit(static_cast<const Subspace&>(p));
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (digit[i] < 2) {
        ++digit[i];
        p.fix(i, digit[i] == 2);
        break;
      }
      digit[i] = 0;
      p.release(i);
    }
    if (i == n) return;
  }
}

}  // namespace

std::string_view to_string(UpdateRule rule) {
  return rule == UpdateRule::kSynchronous ? "sync" : "async";
}

std::span<const StateCode> StateTransitionGraph::successors(StateCode x) const {
  if (offsets_.empty()) return {&targets_[x], 1};
  return {targets_.data() + offsets_[x], targets_.data() + offsets_[x + 1]};
}

StateTransitionGraph build_stg(const BooleanNetwork& net, UpdateRule rule,
                               const DynamicsCaps& caps) {
  const std::size_t n = net.size();
  check_cap(n, rule == UpdateRule::kSynchronous ? caps.sync : caps.async,
            rule == UpdateRule::kSynchronous ? "synchronous STG" : "asynchronous STG");
  const TabulatedNetwork tabulated(net, caps.support);

  StateTransitionGraph stg;
  stg.rule_ = rule;
  stg.n_ = n;
  const std::size_t states = std::size_t{1} << n;
  if (rule == UpdateRule::kSynchronous) {
    stg.targets_.resize(states);
    for (std::size_t x = 0; x < states; ++x) {
      stg.targets_[x] = tabulated.image(static_cast<StateCode>(x));
    }
    return stg;
  }

  stg.offsets_.reserve(states + 1);
  stg.offsets_.push_back(0);
  for (std::size_t x = 0; x < states; ++x) {
    const auto state = static_cast<StateCode>(x);
    const StateCode diff = state ^ tabulated.image(state);
    const std::size_t first = stg.targets_.size();
    if (diff == 0) {
      stg.targets_.push_back(state);
    } else {
      for (StateCode rest = diff; rest != 0; rest &= rest - 1) {
        stg.targets_.push_back(state ^ (rest & (~rest + 1)));
      }
      std::sort(stg.targets_.begin() + first, stg.targets_.end());
    }
    stg.offsets_.push_back(static_cast<std::uint32_t>(stg.targets_.size()));
  }
  return stg;
}

std::vector<std::vector<StateCode>> attractors(const StateTransitionGraph& stg) {
  const std::size_t states = stg.state_count();
  std::vector<std::uint32_t> index(states, kUnvisited);
  std::vector<std::uint32_t> low(states, 0);
  std::vector<std::uint32_t> component(states, kUnvisited);
  std::vector<StateCode> stack;
  std::vector<std::pair<StateCode, std::uint32_t>> calls;  // state, next edge
  std::uint32_t counter = 0;
  std::uint32_t components = 0;

  for (std::size_t root = 0; root < states; ++root) {
    if (index[root] != kUnvisited) continue;
    calls.emplace_back(static_cast<StateCode>(root), 0);
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<StateCode>(root));
    while (!calls.empty()) {
      auto& [v, edge] = calls.back();
      const auto succ = stg.successors(v);
      if (edge < succ.size()) {
        const StateCode w = succ[edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          calls.emplace_back(w, 0);
        } else if (component[w] == kUnvisited) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const StateCode done = v;
      calls.pop_back();
      if (!calls.empty()) {
        const StateCode parent = calls.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        StateCode w;
        do {
          w = stack.back();
          stack.pop_back();
          component[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }

  std::vector<char> terminal(components, 1);
  for (std::size_t x = 0; x < states; ++x) {
    for (StateCode y : stg.successors(static_cast<StateCode>(x))) {
      if (component[y] != component[x]) terminal[component[x]] = 0;
    }
  }
  std::vector<std::vector<StateCode>> out;
  std::vector<std::uint32_t> slot(components, kUnvisited);
  // Ascending scan: attractors come out ordered by smallest member.
  for (std::size_t x = 0; x < states; ++x) {
    const std::uint32_t c = component[x];
    if (!terminal[c]) continue;
    if (slot[c] == kUnvisited) {
      slot[c] = static_cast<std::uint32_t>(out.size());
      out.emplace_back();
    }
    out[slot[c]].push_back(static_cast<StateCode>(x));
  }
  return out;
}

std::vector<StateCode> fixed_points(const StateTransitionGraph& stg) {
  std::vector<StateCode> out;
  for (std::size_t x = 0; x < stg.state_count(); ++x) {
    const auto succ = stg.successors(static_cast<StateCode>(x));
    if (succ.size() == 1 && succ[0] == x) out.push_back(static_cast<StateCode>(x));
  }
  return out;
}

bool is_trap_set(const StateTransitionGraph& stg, std::span<const StateCode> states) {
  if (states.empty()) throw InputError("trap set check on an empty state set");
  std::vector<StateCode> sorted(states.begin(), states.end());
  std::sort(sorted.begin(), sorted.end());
  for (StateCode x : sorted) {
    if (x >= stg.state_count()) throw InputError("state out of range");
    for (StateCode y : stg.successors(x)) {
      if (!std::binary_search(sorted.begin(), sorted.end(), y)) return false;
    }
  }
  return true;
}

std::vector<Subspace> select_extremal(std::vector<Subspace> trap_spaces,
                                      TrapSpaceSelection selection) {
  std::sort(trap_spaces.begin(), trap_spaces.end());
  trap_spaces.erase(std::unique(trap_spaces.begin(), trap_spaces.end()),
                    trap_spaces.end());
  if (selection == TrapSpaceSelection::kAll) return trap_spaces;
  std::vector<Subspace> out;
  for (const Subspace& p : trap_spaces) {
    if (selection == TrapSpaceSelection::kMaximal && p.is_whole_space()) continue;
    const bool dominated = std::any_of(
        trap_spaces.begin(), trap_spaces.end(), [&](const Subspace& q) {
          if (selection == TrapSpaceSelection::kMinimal) return subspace_less(q, p);
          return !q.is_whole_space() && subspace_less(p, q);
        });
    if (!dominated) out.push_back(p);
  }
  return out;
}

std::vector<Subspace> brute_force_trap_spaces(const BooleanNetwork& net,
                                              TrapSpaceSelection selection,
                                              const DynamicsCaps& caps) {
  check_cap(net.size(), caps.brute_force, "brute-force trap space search");
  const TabulatedNetwork tabulated(net, caps.support);
  std::vector<Subspace> found;
  for_each_subspace(net.size(), [&](const Subspace& p) {
    if (tabulated.is_trap_space(p)) found.push_back(p);
  });
  return select_extremal(std::move(found), selection);
}

std::vector<Subspace> trap_set_subspaces(const StateTransitionGraph& stg) {
  std::vector<Subspace> found;
  for_each_subspace(stg.variable_count(), [&](const Subspace& p) {
    const auto [mask, values] = p.code_masks();
    bool closed = true;
    for (std::size_t x = 0; x < stg.state_count() && closed; ++x) {
      if ((x & mask) != values) continue;
      for (StateCode y : stg.successors(static_cast<StateCode>(x))) {
        if ((y & mask) != values) {
          closed = false;
          break;
        }
      }
    }
    if (closed) found.push_back(p);
  });
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace trapspace
