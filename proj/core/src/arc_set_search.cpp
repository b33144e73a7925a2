#include "trapspace/arc_set_search.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

// Literal over engine variables: 2*var for "var = 1", 2*var+1 for "var = 0".
using Lit = std::uint32_t;
constexpr Lit positive(std::uint32_t var) { return var << 1; }
constexpr Lit negative(std::uint32_t var) { return (var << 1) | 1; }
constexpr std::uint32_t var_of(Lit l) { return l >> 1; }

constexpr std::uint32_t kNoClause = std::numeric_limits<std::uint32_t>::max();

enum class Branching {
  kLiteralsFirst,  // decide induced literals, then arcs (selected first)
  kClosure,        // pick a seed arc, then support its tail literals
  kArcOrder,       // arcs by ascending id, selected first
};

struct Goal {
  ArcSetExtremum sense = ArcSetExtremum::kMaximal;
  bool optimize = false;
  // When set, only solutions with exactly this many arcs are admissible.
  std::optional<std::size_t> cardinality;
  Branching branching = Branching::kLiteralsFirst;

  bool pure_feasibility() const { return !optimize && !cardinality; }
};

constexpr std::uint64_t kClockStride = 512;

}  // namespace

class ArcSetProblem::Engine {
 public:
  explicit Engine(const PrimeImplicantGraph& graph)
      : m_(graph.size()),
        n_(graph.variable_count()),
        value_(m_ + 2 * n_, -1),
        level_(m_ + 2 * n_, 0),
        reason_(m_ + 2 * n_, kNoClause),
        seen_(m_ + 2 * n_, 0),
        watches_(2 * (m_ + 2 * n_)),
        head_(m_),
        tails_(m_),
        by_head_(2 * n_),
        open_head_(2 * n_, 0),
        support_true_(2 * n_, 0) {
    for (const HyperArc& a : graph.arcs()) {
      const std::uint32_t x = arc_var(a.id);
      head_[x] = static_cast<std::uint32_t>(a.head.index());
      by_head_[a.head.index()].push_back(x);
      add_clause({negative(x), positive(literal_var(a.head.index()))});
      for (const Literal& t : a.tail) {
        add_clause({negative(x), positive(literal_var(t.index()))});
        tails_[x].push_back(static_cast<std::uint32_t>(t.index()));
      }
    }
    for (std::size_t l = 0; l < 2 * n_; ++l) {
      std::vector<Lit> c{negative(literal_var(l))};
      for (std::uint32_t x : by_head_[l]) c.push_back(positive(x));
      add_clause(std::move(c));
      open_head_[l] = by_head_[l].size();
    }
    for (std::size_t v = 0; v < n_; ++v) {
      add_clause({negative(literal_var(2 * v)), negative(literal_var(2 * v + 1))});
      upper_ += std::max(open_head_[2 * v], open_head_[2 * v + 1]);
    }
    for (std::uint32_t x : unstable_arcs(graph)) add_clause({negative(x)});
  }

  std::size_t arc_count() const { return m_; }
  std::size_t variable_count() const { return n_; }
  std::uint32_t arc_var(std::size_t id) const { return static_cast<std::uint32_t>(id - 1); }
  std::uint32_t literal_var(std::size_t l) const {
    return static_cast<std::uint32_t>(m_ + l);
  }

  void add_clause(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i) {
      if (lits[i] == (lits[i - 1] ^ 1)) return;  // tautology
    }
    if (lits.empty()) {
      contradiction_ = true;
    } else if (lits.size() == 1) {
      units_.push_back(lits.front());
    } else {
      attach(std::move(lits));
    }
  }

  // `assumptions` are decided first, one per level, and only honored by
  // feasibility searches.
  Outcome search(const Goal& goal, Clock::time_point deadline, Assignment* out,
                 std::vector<Lit> assumptions = {}) {
    assumptions_ = std::move(assumptions);
    if (!start()) return Outcome::kInfeasible;
    return goal.pure_feasibility() ? learn_and_backjump(goal, deadline, out)
                                   : branch_and_bound(goal, deadline, out);
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  struct Frame {
    std::size_t trail_size;
    Lit decision;
    bool flipped;
  };

  // Arcs outside the greatest stable subset of all arcs: a tail literal that
  // no surviving arc can induce rules them out of every solution.
  std::vector<std::uint32_t> unstable_arcs(const PrimeImplicantGraph& graph) const {
    std::vector<std::size_t> producers(2 * n_, 0);
    for (const HyperArc& a : graph.arcs()) ++producers[a.head.index()];
    std::vector<std::vector<std::uint32_t>> users(2 * n_);
    for (const HyperArc& a : graph.arcs()) {
      for (const Literal& t : a.tail) users[t.index()].push_back(arc_var(a.id));
    }
    std::vector<char> dead(m_, 0);
    std::vector<std::size_t> queue;
    for (std::size_t l = 0; l < 2 * n_; ++l) {
      if (producers[l] == 0) queue.push_back(l);
    }
    std::vector<std::uint32_t> out;
    while (!queue.empty()) {
      const std::size_t l = queue.back();
      queue.pop_back();
      for (std::uint32_t x : users[l]) {
        if (dead[x]) continue;
        dead[x] = 1;
        out.push_back(x);
        if (--producers[head_[x]] == 0) queue.push_back(head_[x]);
      }
    }
    return out;
  }

  std::uint32_t attach(std::vector<Lit> lits) {
    const auto ci = static_cast<std::uint32_t>(clauses_.size());
    watches_[lits[0]].push_back(ci);
    watches_[lits[1]].push_back(ci);
    clauses_.push_back(std::move(lits));
    return ci;
  }

  // Clears the previous search and asserts the unit clauses at level 0.
  bool start() {
    undo_to(0);
    frames_.clear();
    level_starts_.clear();
    qhead_ = 0;
    if (contradiction_) return false;
    for (Lit u : units_) {
      if (!enqueue(u, kNoClause)) return false;
    }
    return propagate() == kNoClause;
  }

  Outcome branch_and_bound(const Goal& goal, Clock::time_point deadline,
                           Assignment* out) {
    bool found = false;
    long long best = goal.sense == ArcSetExtremum::kMaximal
                         ? -1
                         : std::numeric_limits<long long>::max();
    Assignment incumbent;
    bool conflict = false;
    while (true) {
      if (!conflict && pruned(goal, best)) conflict = true;
      if (conflict) {
        if (!backtrack()) break;
        conflict = propagate() != kNoClause;
        continue;
      }
      const std::optional<Lit> decision = pick(goal.branching);
      if (!decision) {
        if (!goal.optimize) {
          if (out) *out = extract();
          return Outcome::kFound;
        }
        incumbent = extract();
        best = static_cast<long long>(true_arcs_);
        found = true;
        conflict = true;  // keep looking for a strictly better one
        continue;
      }
      if (++nodes_ % kClockStride == 0 && Clock::now() > deadline) {
        return Outcome::kTimedOut;
      }
      frames_.push_back(Frame{trail_.size(), *decision, false});
      enqueue(*decision, kNoClause);
      conflict = propagate() != kNoClause;
    }
    if (!found) return Outcome::kInfeasible;
    if (out) *out = std::move(incumbent);
    return Outcome::kFound;
  }

  Outcome learn_and_backjump(const Goal& goal, Clock::time_point deadline,
                             Assignment* out) {
    while (true) {
      const std::uint32_t conflict = propagate();
      if (conflict != kNoClause) {
        if (level_starts_.empty()) return Outcome::kInfeasible;
        std::vector<Lit> learned = analyze(conflict);
        std::size_t target = 0;
        if (learned.size() > 1) {
          auto second = std::max_element(
              learned.begin() + 1, learned.end(),
              [&](Lit a, Lit b) { return level_[var_of(a)] < level_[var_of(b)]; });
          std::swap(learned[1], *second);
          target = level_[var_of(learned[1])];
        }
        backjump(target);
        if (learned.size() == 1) {
          units_.push_back(learned[0]);
          enqueue(learned[0], kNoClause);
        } else {
          const Lit asserted = learned[0];
          const std::uint32_t ci = attach(std::move(learned));
          enqueue(asserted, ci);
        }
        continue;
      }
      if (level_starts_.size() < assumptions_.size()) {
        const Lit a = assumptions_[level_starts_.size()];
        const int v = lit_value(a);
        if (v == 0) return Outcome::kInfeasible;
        level_starts_.push_back(trail_.size());
        if (v < 0) enqueue(a, kNoClause);
        continue;
      }
      const std::optional<Lit> decision = pick(goal.branching);
      if (!decision) {
        if (out) *out = extract();
        return Outcome::kFound;
      }
      if (++nodes_ % kClockStride == 0 && Clock::now() > deadline) {
        return Outcome::kTimedOut;
      }
      level_starts_.push_back(trail_.size());
      enqueue(*decision, kNoClause);
    }
  }

  // First-UIP learning: resolves the conflict clause with reasons of
  // current-level literals until one current-level literal remains. Its
  // negation comes first in the result.
  std::vector<Lit> analyze(std::uint32_t conflict) {
    const std::size_t current = level_starts_.size();
    std::vector<Lit> learned{0};
    std::vector<std::uint32_t> marked;
    std::size_t pending = 0;
    std::optional<Lit> resolved;
    std::size_t index = trail_.size();
    std::uint32_t clause = conflict;
    while (true) {
      for (Lit q : clauses_[clause]) {
        const std::uint32_t v = var_of(q);
        if (resolved && v == var_of(*resolved)) continue;
        if (seen_[v] || level_[v] == 0) continue;
        seen_[v] = 1;
        marked.push_back(v);
        if (level_[v] >= current) {
          ++pending;
        } else {
          learned.push_back(q);
        }
      }
      do {
        --index;
      } while (!seen_[var_of(trail_[index])]);
      resolved = trail_[index];
      seen_[var_of(*resolved)] = 0;
      if (--pending == 0) break;
      clause = reason_[var_of(*resolved)];
    }
    learned[0] = *resolved ^ 1;
    for (std::uint32_t v : marked) seen_[v] = 0;
    return learned;
  }

  void backjump(std::size_t level) {
    if (level >= level_starts_.size()) return;
    undo_to(level_starts_[level]);
    level_starts_.resize(level);
  }

  int lit_value(Lit l) const {
    const int v = value_[var_of(l)];
    return v < 0 ? -1 : (v ^ static_cast<int>(l & 1));
  }

  bool enqueue(Lit l, std::uint32_t reason) {
    const int v = lit_value(l);
    if (v >= 0) return v == 1;
    const std::uint32_t var = var_of(l);
    const bool val = (l & 1) == 0;
    value_[var] = val ? 1 : 0;
    level_[var] = static_cast<std::uint32_t>(level_starts_.size());
    reason_[var] = reason;
    trail_.push_back(l);
    on_assign(var, val);
    return true;
  }

  void set_open(std::size_t l, std::size_t count) {
    const std::size_t v = l / 2;
    const std::size_t before = std::max(open_head_[2 * v], open_head_[2 * v + 1]);
    open_head_[l] = count;
    upper_ = upper_ - before + std::max(open_head_[2 * v], open_head_[2 * v + 1]);
  }

  bool induced(std::size_t l) const { return value_[literal_var(l)] == 1; }

  void on_assign(std::uint32_t var, bool val) {
    if (var < m_) {
      const std::size_t h = head_[var];
      if (val) {
        ++true_arcs_;
        if (support_true_[h]++ == 0 && induced(h)) --unsupported_;
      } else {
        set_open(h, open_head_[h] - 1);
      }
    } else if (val && support_true_[var - m_] == 0) {
      ++unsupported_;
    }
  }

  void on_unassign(std::uint32_t var, bool val) {
    if (var < m_) {
      const std::size_t h = head_[var];
      if (val) {
        --true_arcs_;
        if (--support_true_[h] == 0 && induced(h)) ++unsupported_;
      } else {
        set_open(h, open_head_[h] + 1);
      }
    } else if (val && support_true_[var - m_] == 0) {
      --unsupported_;
    }
  }

  void undo_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
      const std::uint32_t var = var_of(trail_.back());
      trail_.pop_back();
      on_unassign(var, value_[var] == 1);
      value_[var] = -1;
      reason_[var] = kNoClause;
    }
    qhead_ = std::min(qhead_, trail_.size());
  }

  bool backtrack() {
    while (!frames_.empty()) {
      Frame f = frames_.back();
      frames_.pop_back();
      undo_to(f.trail_size);
      if (!f.flipped) {
        frames_.push_back(Frame{f.trail_size, f.decision ^ 1, true});
        enqueue(f.decision ^ 1, kNoClause);
        return true;
      }
    }
    return false;
  }

  // Returns the falsified clause, or kNoClause when propagation settles.
  std::uint32_t propagate() {
    while (qhead_ < trail_.size()) {
      const Lit falsified = trail_[qhead_++] ^ 1;
      std::vector<std::uint32_t>& ws = watches_[falsified];
      std::size_t keep = 0;
      for (std::size_t i = 0; i < ws.size(); ++i) {
        const std::uint32_t ci = ws[i];
        std::vector<Lit>& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (lit_value(c[0]) == 1) {
          ws[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (lit_value(c[k]) != 0) {
            std::swap(c[1], c[k]);
            watches_[c[1]].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[keep++] = ci;
        if (!enqueue(c[0], ci)) {
          for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
          ws.resize(keep);
          qhead_ = trail_.size();
          return ci;
        }
      }
      ws.resize(keep);
    }
    return kNoClause;
  }

  bool pruned(const Goal& goal, long long best) const {
    if (goal.sense == ArcSetExtremum::kMaximal) {
      const auto upper = static_cast<long long>(upper_);
      if (goal.cardinality && upper < static_cast<long long>(*goal.cardinality)) return true;
      return goal.optimize && upper <= best;
    }
    const auto lower = static_cast<long long>(true_arcs_ + unsupported_);
    if (goal.cardinality && lower > static_cast<long long>(*goal.cardinality)) return true;
    return goal.optimize && lower >= best;
  }

  std::optional<Lit> first_unassigned_arc(bool select) const {
    for (std::uint32_t x = 0; x < m_; ++x) {
      if (value_[x] < 0) return select ? positive(x) : negative(x);
    }
    return std::nullopt;
  }

  std::optional<Lit> first_unassigned(bool select) const {
    for (std::uint32_t var = 0; var < value_.size(); ++var) {
      if (value_[var] < 0) return select ? positive(var) : negative(var);
    }
    return std::nullopt;
  }

  // Fail-first: the induced literal with the fewest open producers, then
  // its producer that would induce the fewest new literals.
  std::optional<Lit> closure_step() const {
    std::size_t best_literal = 2 * n_;
    for (std::size_t l = 0; l < 2 * n_; ++l) {
      if (!induced(l) || support_true_[l] > 0) continue;
      if (best_literal == 2 * n_ || open_head_[l] < open_head_[best_literal]) {
        best_literal = l;
      }
    }
    if (best_literal == 2 * n_) return std::nullopt;
    std::optional<std::uint32_t> best_arc;
    std::size_t best_cost = 0;
    for (std::uint32_t x : by_head_[best_literal]) {
      if (value_[x] >= 0) continue;
      std::size_t cost = 0;
      for (std::uint32_t t : tails_[x]) cost += induced(t) ? 0 : 1;
      if (!best_arc || cost < best_cost) {
        best_arc = x;
        best_cost = cost;
      }
    }
    if (!best_arc) return std::nullopt;
    return positive(*best_arc);
  }

  std::optional<Lit> pick(Branching branching) const {
    switch (branching) {
      case Branching::kLiteralsFirst:
        for (std::size_t v = 0; v < n_; ++v) {
          const int y0 = value_[literal_var(2 * v)];
          const int y1 = value_[literal_var(2 * v + 1)];
          if (y0 < 0 && y1 < 0) {
            const bool one = open_head_[2 * v + 1] >= open_head_[2 * v];
            return positive(literal_var(2 * v + (one ? 1 : 0)));
          }
          if (y0 < 0) return positive(literal_var(2 * v));
          if (y1 < 0) return positive(literal_var(2 * v + 1));
        }
        return first_unassigned(true);
      case Branching::kClosure:
        if (auto d = closure_step()) return d;
        if (true_arcs_ == 0) {
          if (auto d = first_unassigned_arc(true)) return d;
        }
        return first_unassigned(false);
      case Branching::kArcOrder:
        if (auto d = first_unassigned_arc(true)) return d;
        return first_unassigned(true);
    }
    return std::nullopt;
  }

  Assignment extract() const {
    Assignment a;
    for (std::uint32_t x = 0; x < m_; ++x) {
      if (value_[x] == 1) a.arcs.push_back(x + 1);
    }
    a.induced = Subspace(n_);
    for (std::size_t l = 0; l < 2 * n_; ++l) {
      if (induced(l)) a.induced.fix(l / 2, (l & 1) != 0);
    }
    return a;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<std::int8_t> value_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<char> seen_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<Lit> units_;
  std::vector<Lit> assumptions_;
  bool contradiction_ = false;

  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  std::vector<Frame> frames_;              // branch-and-bound decisions
  std::vector<std::size_t> level_starts_;  // trail size where each level begins
  std::uint64_t nodes_ = 0;

  std::vector<std::uint32_t> head_;
  std::vector<std::vector<std::uint32_t>> tails_;
  std::vector<std::vector<std::uint32_t>> by_head_;
  std::vector<std::size_t> open_head_;     // arcs heading l not yet excluded
  std::vector<std::size_t> support_true_;  // selected arcs heading l
  std::size_t upper_ = 0;        // sum over variables of max open heads
  std::size_t true_arcs_ = 0;
  std::size_t unsupported_ = 0;  // induced literals with no selected head
};

ArcSetProblem::ArcSetProblem(const PrimeImplicantGraph& graph)
    : engine_(std::make_unique<Engine>(graph)) {}
ArcSetProblem::~ArcSetProblem() = default;
ArcSetProblem::ArcSetProblem(ArcSetProblem&&) noexcept = default;
ArcSetProblem& ArcSetProblem::operator=(ArcSetProblem&&) noexcept = default;

void ArcSetProblem::require_nonempty() {
  std::vector<Lit> c;
  for (std::size_t id = 1; id <= engine_->arc_count(); ++id) {
    c.push_back(positive(engine_->arc_var(id)));
  }
  engine_->add_clause(std::move(c));
}

void ArcSetProblem::require_all_fixed() {
  for (std::size_t v = 0; v < engine_->variable_count(); ++v) {
    engine_->add_clause({positive(engine_->literal_var(2 * v)),
                         positive(engine_->literal_var(2 * v + 1))});
  }
}

void ArcSetProblem::check_width(const Subspace& p) const {
  if (p.size() != engine_->variable_count()) {
    throw InputError("subspace width does not match the graph");
  }
}

void ArcSetProblem::forbid_subsets_of(std::span<const std::size_t> arc_ids) {
  std::vector<char> inside(engine_->arc_count() + 1, 0);
  for (std::size_t id : arc_ids) {
    if (id == 0 || id > engine_->arc_count()) {
      throw InputError("unknown arc id " + std::to_string(id));
    }
    inside[id] = 1;
  }
  std::vector<Lit> c;
  for (std::size_t id = 1; id <= engine_->arc_count(); ++id) {
    if (!inside[id]) c.push_back(positive(engine_->arc_var(id)));
  }
  engine_->add_clause(std::move(c));
}

void ArcSetProblem::forbid_supersets_of(std::span<const std::size_t> arc_ids) {
  std::vector<Lit> c;
  for (std::size_t id : arc_ids) {
    if (id == 0 || id > engine_->arc_count()) {
      throw InputError("unknown arc id " + std::to_string(id));
    }
    c.push_back(negative(engine_->arc_var(id)));
  }
  engine_->add_clause(std::move(c));
}

void ArcSetProblem::forbid_induced(const Subspace& p) {
  check_width(p);
  std::vector<Lit> c;
  const Bits& mask = p.fixed_mask();
  for (std::size_t v = mask.find_first(); v != Bits::npos; v = mask.find_next(v)) {
    c.push_back(negative(engine_->literal_var(2 * v + (p.value(v) ? 1 : 0))));
  }
  engine_->add_clause(std::move(c));
}

void ArcSetProblem::forbid_induced_exactly(const Subspace& p) {
  check_width(p);
  std::vector<Lit> c;
  for (std::size_t v = 0; v < p.size(); ++v) {
    for (std::size_t value = 0; value < 2; ++value) {
      const bool inside = p.is_fixed(v) && p.value(v) == (value == 1);
      const std::uint32_t y = engine_->literal_var(2 * v + value);
      c.push_back(inside ? negative(y) : positive(y));
    }
  }
  engine_->add_clause(std::move(c));
}

ArcSetProblem::Outcome ArcSetProblem::find_feasible(Clock::time_point deadline,
                                                    Assignment* out, Order order) {
  Goal goal;
  goal.branching = order == Order::kSeedClosure ? Branching::kClosure
                                                : Branching::kLiteralsFirst;
  return engine_->search(goal, deadline, out);
}

ArcSetProblem::Outcome ArcSetProblem::find_feasible_selecting(
    std::span<const std::size_t> arc_ids, Clock::time_point deadline, Assignment* out,
    Order order) {
  std::vector<Lit> assumptions;
  for (std::size_t id : arc_ids) {
    if (id == 0 || id > engine_->arc_count()) {
      throw InputError("unknown arc id " + std::to_string(id));
    }
    assumptions.push_back(positive(engine_->arc_var(id)));
  }
  Goal goal;
  goal.branching = order == Order::kSeedClosure ? Branching::kClosure
                                                : Branching::kLiteralsFirst;
  return engine_->search(goal, deadline, out, std::move(assumptions));
}

ArcSetProblem::Outcome ArcSetProblem::find_optimal(ArcSetExtremum sense,
                                                   Clock::time_point deadline,
                                                   Assignment* out) {
  // First the optimal cardinality, then the lexicographically first
  // solution of that cardinality (arcs decided by ascending id, selected
  // first, so the first leaf reached is the smallest id sequence).
  Goal bound;
  bound.sense = sense;
  bound.optimize = true;
  bound.branching = sense == ArcSetExtremum::kMaximal ? Branching::kLiteralsFirst
                                                      : Branching::kClosure;
  Assignment best;
  const Outcome first = engine_->search(bound, deadline, &best);
  if (first != Outcome::kFound) return first;

  Goal tie_break;
  tie_break.sense = sense;
  tie_break.cardinality = best.arcs.size();
  tie_break.branching = Branching::kArcOrder;
  return engine_->search(tie_break, deadline, out);
}

std::uint64_t ArcSetProblem::nodes() const { return engine_->nodes(); }

}  // namespace trapspace
