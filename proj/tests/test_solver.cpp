#include <algorithm>
#include <chrono>
#include <set>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "trapspace/arc_set_search.hpp"
#include "trapspace/dynamics.hpp"
#include "trapspace/error.hpp"
#include "trapspace/primes.hpp"
#include "trapspace/solver.hpp"

namespace trapspace {
namespace {

using Ids = std::vector<std::size_t>;
using testing::negation_cycle;
using testing::running_example;
using testing::texts;

bool subset_of(const Ids& a, const Ids& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Every stable and consistent arc set, by trying all subsets.
std::vector<Ids> stable_consistent_sets(const PrimeImplicantGraph& g) {
  std::vector<Ids> out;
  const std::size_t m = g.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    Ids ids;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1) ids.push_back(i + 1);
    }
    if (is_consistent(g, ids) && is_stable(g, ids)) out.push_back(ids);
  }
  return out;
}

std::vector<Ids> extremal_sets(const std::vector<Ids>& sets, ArcSetExtremum mode) {
  std::vector<Ids> out;
  for (const Ids& a : sets) {
    if (mode == ArcSetExtremum::kMinimal && a.empty()) continue;
    const bool beaten = std::any_of(sets.begin(), sets.end(), [&](const Ids& b) {
      if (b == a || (mode == ArcSetExtremum::kMinimal && b.empty())) return false;
      return mode == ArcSetExtremum::kMaximal ? subset_of(a, b) : subset_of(b, a);
    });
    if (!beaten) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Ids> arc_sets(const Enumeration& e) {
  std::vector<Ids> out;
  for (const ArcSetSolution& s : e.solutions) out.push_back(s.arcs);
  std::sort(out.begin(), out.end());
  return out;
}

SolverOptions with_round(RoundStrategy round) {
  SolverOptions o;
  o.round = round;
  return o;
}

TEST_CASE("consistency, stability and induced subspaces") {
  const PrimeImplicantGraph g = build_graph(running_example());
  CHECK(is_consistent(g, Ids{}));
  CHECK(is_consistent(g, Ids{1, 8, 10}));
  CHECK_FALSE(is_consistent(g, Ids{10, 11}));
  CHECK(is_stable(g, Ids{1}));
  CHECK_FALSE(is_stable(g, Ids{2}));
  CHECK(is_stable(g, Ids{}));
  CHECK(induced_subspace(g, Ids{1, 8}).to_string() == "1-0-");
  CHECK(induced_subspace(g, Ids{1, 8, 10}).to_string() == "1-01");
  CHECK(induced_subspace(g, Ids{1, 2, 4, 8, 10}).to_string() == "1101");
  CHECK(induced_subspace(g, Ids{}).to_string() == "----");
  CHECK_THROWS_AS(induced_subspace(g, Ids{10, 11}), InputError);
  CHECK_THROWS_AS(is_consistent(g, Ids{12}), InputError);
  CHECK_THROWS_AS(is_stable(g, Ids{0}), InputError);
  CHECK(greatest_stable_subset(g, Ids{1, 2, 4, 7, 8, 10}) == Ids{1, 2, 4, 8, 10});
  CHECK(greatest_stable_subset(g, Ids{2, 4}).empty());
}

TEST_CASE("the running example has eight stable and consistent arc sets") {
  const PrimeImplicantGraph g = build_graph(running_example());
  std::vector<Ids> all = stable_consistent_sets(g);
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<Ids>{{},
                                {1},
                                {1, 2, 4, 8, 10},
                                {1, 4, 8, 10},
                                {1, 8},
                                {1, 8, 10},
                                {2, 4, 8, 10},
                                {3, 5}});
  std::vector<std::string> induced;
  for (const Ids& a : all) induced.push_back(induced_subspace(g, a).to_string());
  CHECK(induced == std::vector<std::string>{"----", "1---", "1101", "1101", "1-0-", "1-01",
                                            "1101", "00--"});
}

TEST_CASE("extremal arc sets of the running example") {
  const PrimeImplicantGraph g = build_graph(running_example());
  for (RoundStrategy round : {RoundStrategy::kExtendFeasible, RoundStrategy::kCardinalityOptimal}) {
    const Enumeration hi = enumerate_extremal(g, ArcSetExtremum::kMaximal, with_round(round));
    CHECK(hi.complete());
    CHECK(arc_sets(hi) == std::vector<Ids>{{1, 2, 4, 8, 10}, {3, 5}});
    const Enumeration lo = enumerate_extremal(g, ArcSetExtremum::kMinimal, with_round(round));
    CHECK(lo.complete());
    // D2 = {2,4,8,10} has no stable proper subset either; it induces 1101,
    // which the trap space filter drops.
    CHECK(arc_sets(lo) == std::vector<Ids>{{1}, {2, 4, 8, 10}, {3, 5}});
    CHECK(cuts_exhaust(g, ArcSetExtremum::kMaximal, hi.solutions));
    CHECK(cuts_exhaust(g, ArcSetExtremum::kMinimal, lo.solutions));
  }
}

TEST_CASE("a negation cycle has no non-empty stable set") {
  const PrimeImplicantGraph g = build_graph(negation_cycle());
  CHECK(stable_consistent_sets(g) == std::vector<Ids>{{}});
  CHECK(enumerate_extremal(g, ArcSetExtremum::kMinimal).solutions.empty());
  const Enumeration hi = enumerate_extremal(g, ArcSetExtremum::kMaximal);
  CHECK(arc_sets(hi) == std::vector<Ids>{{}});

  CHECK(texts(min_trap_spaces(g).spaces) == std::vector<std::string>{"--"});
  CHECK(max_trap_spaces(g).spaces.empty());
  CHECK(steady_states(g).spaces.empty());
}

TEST_CASE("trap space reports of the running example") {
  const BooleanNetwork net = running_example();
  const TrapSpaceReport lo = min_trap_spaces(net);
  CHECK(lo.kind == TrapSpaceKind::kMinimal);
  CHECK(texts(lo.spaces) == std::vector<std::string>{"00--", "1101"});
  CHECK(lo.witnesses[0].arcs == Ids{3, 5});
  CHECK(lo.witnesses[1].arcs == Ids{1, 2, 4, 8, 10});
  CHECK(lo.stats.arc_count == 11);
  CHECK(lo.stats.iterations >= 2);

  const TrapSpaceReport hi = max_trap_spaces(net);
  CHECK(texts(hi.spaces) == std::vector<std::string>{"00--", "1---"});
  CHECK(hi.witnesses[1].arcs == Ids{1});

  CHECK(texts(steady_states(net).spaces) == std::vector<std::string>{"1101"});
  CHECK(texts(all_trap_spaces(net).spaces) ==
        std::vector<std::string>{"----", "00--", "1---", "1-0-", "1-01", "1101"});
  CHECK(to_string(TrapSpaceKind::kSteady) == "steady");
}

TEST_CASE("small networks") {
  const BooleanNetwork one = parse_network("v1, 1\n");
  CHECK(texts(min_trap_spaces(one).spaces) == std::vector<std::string>{"1"});
  CHECK(texts(max_trap_spaces(one).spaces) == std::vector<std::string>{"1"});
  CHECK(texts(steady_states(one).spaces) == std::vector<std::string>{"1"});

  const BooleanNetwork input = parse_network("v1, v1\n");
  CHECK(texts(min_trap_spaces(input).spaces) == std::vector<std::string>{"0", "1"});
  CHECK(texts(max_trap_spaces(input).spaces) == std::vector<std::string>{"0", "1"});
  CHECK(texts(steady_states(input).spaces) == std::vector<std::string>{"0", "1"});

  const BooleanNetwork neg = parse_network("v1, !v1\n");
  CHECK(texts(min_trap_spaces(neg).spaces) == std::vector<std::string>{"-"});
  CHECK(max_trap_spaces(neg).spaces.empty());
  CHECK(steady_states(neg).spaces.empty());
}

TEST_CASE("both round strategies match the subset oracle") {
  std::size_t graphs = 0;
  for (const BooleanNetwork& net : testing::corpus(120, 2, 6, 1000)) {
    const PrimeImplicantGraph g = build_graph(net);
    if (g.size() > 16) continue;
    ++graphs;
    const std::vector<Ids> all = stable_consistent_sets(g);
    for (ArcSetExtremum mode : {ArcSetExtremum::kMaximal, ArcSetExtremum::kMinimal}) {
      const std::vector<Ids> expected = extremal_sets(all, mode);
      for (RoundStrategy round :
           {RoundStrategy::kExtendFeasible, RoundStrategy::kCardinalityOptimal}) {
        const Enumeration e = enumerate_extremal(g, mode, with_round(round));
        CHECK(e.complete());
        CHECK(arc_sets(e) == expected);
        CHECK(cuts_exhaust(g, mode, e.solutions));
      }
    }
  }
  CHECK(graphs >= 40);
}

TEST_CASE("cardinality rounds emit optima in order with smallest ids first") {
  for (const BooleanNetwork& net : testing::corpus(30, 3, 6, 1200)) {
    const PrimeImplicantGraph g = build_graph(net);
    const Enumeration hi =
        enumerate_extremal(g, ArcSetExtremum::kMaximal, with_round(RoundStrategy::kCardinalityOptimal));
    for (std::size_t i = 1; i < hi.solutions.size(); ++i) {
      CHECK(hi.solutions[i - 1].arcs.size() >= hi.solutions[i].arcs.size());
    }
    const Enumeration lo =
        enumerate_extremal(g, ArcSetExtremum::kMinimal, with_round(RoundStrategy::kCardinalityOptimal));
    for (std::size_t i = 1; i < lo.solutions.size(); ++i) {
      const Ids& a = lo.solutions[i - 1].arcs;
      const Ids& b = lo.solutions[i].arcs;
      CHECK((a.size() < b.size() || (a.size() == b.size() && a < b)));
    }
  }
}

TEST_CASE("cuts_exhaust detects a missing solution") {
  const PrimeImplicantGraph g = build_graph(running_example());
  const Enumeration hi = enumerate_extremal(g, ArcSetExtremum::kMaximal);
  REQUIRE(hi.solutions.size() == 2);
  CHECK_FALSE(cuts_exhaust(g, ArcSetExtremum::kMaximal,
                           std::span<const ArcSetSolution>(hi.solutions.data(), 1)));
  CHECK_FALSE(cuts_exhaust(g, ArcSetExtremum::kMinimal, {}));
}

TEST_CASE("solver reports equal the exhaustive oracle") {
  for (const BooleanNetwork& net : testing::corpus(80, 3, 9, 2000)) {
    const PrimeImplicantGraph g = build_graph(net);
    const TrapSpaceReport lo = min_trap_spaces(g);
    const TrapSpaceReport hi = max_trap_spaces(g);
    const TrapSpaceReport all = all_trap_spaces(g);
    const TrapSpaceReport steady = steady_states(g);
    CHECK(lo.spaces == brute_force_trap_spaces(net, TrapSpaceSelection::kMinimal));
    CHECK(hi.spaces == brute_force_trap_spaces(net, TrapSpaceSelection::kMaximal));
    CHECK(all.spaces == brute_force_trap_spaces(net, TrapSpaceSelection::kAll));

    std::vector<Subspace> fixed_points;
    const std::vector<StateCode> image = testing::image_table(net);
    for (StateCode x = 0; x < image.size(); ++x) {
      if (image[x] == x) fixed_points.push_back(Subspace::from_code(net.size(), x));
    }
    CHECK(steady.spaces == fixed_points);

    for (const TrapSpaceReport* r : {&lo, &hi, &all, &steady}) {
      REQUIRE(r->spaces.size() == r->witnesses.size());
      CHECK(std::is_sorted(r->spaces.begin(), r->spaces.end()));
      for (std::size_t i = 0; i < r->spaces.size(); ++i) {
        const Ids& w = r->witnesses[i].arcs;
        CHECK(is_trap_space(net, r->spaces[i]));
        CHECK(is_consistent(g, w));
        CHECK(is_stable(g, w));
        CHECK(induced_subspace(g, w) == r->spaces[i]);
        CHECK(r->witnesses[i].induced == r->spaces[i]);
      }
    }
    for (const TrapSpaceReport* r : {&lo, &hi}) {
      for (const Subspace& p : r->spaces) {
        for (const Subspace& q : r->spaces) CHECK((p == q || !subspace_leq(p, q)));
      }
    }
    for (const Subspace& x : steady.spaces) {
      CHECK(std::find(lo.spaces.begin(), lo.spaces.end(), x) != lo.spaces.end());
    }
  }
}

TEST_CASE("round strategies agree on larger networks") {
  SolverOptions optimal = with_round(RoundStrategy::kCardinalityOptimal);
  optimal.timeout = std::chrono::seconds(60);
  for (const BooleanNetwork& net : testing::corpus(12, 12, 20, 3000)) {
    const PrimeImplicantGraph g = build_graph(net);
    const TrapSpaceReport a = min_trap_spaces(g);
    const TrapSpaceReport b = min_trap_spaces(g, optimal);
    REQUIRE(b.complete());
    CHECK(a.spaces == b.spaces);
    const TrapSpaceReport c = max_trap_spaces(g);
    const TrapSpaceReport d = max_trap_spaces(g, optimal);
    REQUIRE(d.complete());
    CHECK(c.spaces == d.spaces);
  }
}

TEST_CASE("reports are deterministic") {
  for (const BooleanNetwork& net : testing::corpus(10, 20, 40, 4000)) {
    const TrapSpaceReport a = min_trap_spaces(net);
    const TrapSpaceReport b = min_trap_spaces(net);
    CHECK(a.spaces == b.spaces);
    CHECK(a.witnesses == b.witnesses);
    const TrapSpaceReport c = max_trap_spaces(net);
    const TrapSpaceReport d = max_trap_spaces(net);
    CHECK(c.spaces == d.spaces);
    CHECK(c.witnesses == d.witnesses);
  }
}

TEST_CASE("limits and timeouts flag partial results") {
  const BooleanNetwork net = parse_network("a, a\nb, b\nc, c\n");
  SolverOptions one;
  one.limit = 1;
  const TrapSpaceReport r = max_trap_spaces(net, one);
  CHECK(r.status == SolveStatus::kLimitReached);
  CHECK_FALSE(r.complete());
  CHECK(r.spaces.size() == 1);
  CHECK(steady_states(net, one).status == SolveStatus::kLimitReached);
  CHECK(to_string(SolveStatus::kLimitReached) != to_string(SolveStatus::kComplete));

  SolverOptions none;
  none.timeout = std::chrono::milliseconds(0);
  const BooleanNetwork big = generate(GeneratorConfig{200, 3.0, 1, 12});
  const TrapSpaceReport t = min_trap_spaces(big, none);
  CHECK(t.status == SolveStatus::kTimedOut);
  CHECK_FALSE(t.complete());
}

TEST_CASE("arc set problem side constraints") {
  const PrimeImplicantGraph g = build_graph(running_example());
  const auto deadline = Clock::now() + std::chrono::seconds(10);
  using Outcome = ArcSetProblem::Outcome;

  ArcSetProblem p(g);
  p.require_all_fixed();
  ArcSetProblem::Assignment a;
  REQUIRE(p.find_feasible(deadline, &a) == Outcome::kFound);
  CHECK(a.induced.to_string() == "1101");
  p.forbid_induced(a.induced);
  CHECK(p.find_feasible(deadline, &a) == Outcome::kInfeasible);

  ArcSetProblem q(g);
  q.forbid_induced(Subspace::parse("0---"));
  q.require_nonempty();
  REQUIRE(q.find_feasible_selecting(Ids{8}, deadline, &a) == Outcome::kFound);
  CHECK(std::find(a.arcs.begin(), a.arcs.end(), 8) != a.arcs.end());
  CHECK(a.induced.value(0));
  CHECK(q.find_feasible_selecting(Ids{3}, deadline, &a) == Outcome::kInfeasible);
  CHECK(q.find_feasible_selecting(Ids{10, 11}, deadline, &a) == Outcome::kInfeasible);
  CHECK(q.find_feasible(deadline, &a) == Outcome::kFound);

  ArcSetProblem r(g);
  r.forbid_induced_exactly(Subspace(4));
  REQUIRE(r.find_optimal(ArcSetExtremum::kMinimal, deadline, &a) == Outcome::kFound);
  CHECK(a.arcs == Ids{1});
  REQUIRE(r.find_optimal(ArcSetExtremum::kMaximal, deadline, &a) == Outcome::kFound);
  CHECK(a.arcs == Ids{1, 2, 4, 8, 10});
  r.forbid_supersets_of(Ids{1});
  r.forbid_supersets_of(Ids{3, 5});
  REQUIRE(r.find_optimal(ArcSetExtremum::kMinimal, deadline, &a) == Outcome::kFound);
  CHECK(a.arcs == Ids{2, 4, 8, 10});
  r.forbid_supersets_of(a.arcs);
  CHECK(r.find_optimal(ArcSetExtremum::kMinimal, deadline, &a) == Outcome::kInfeasible);
  CHECK(r.nodes() > 0);
  CHECK_THROWS_AS(r.forbid_subsets_of(Ids{99}), InputError);
  CHECK_THROWS_AS(r.forbid_supersets_of(Ids{0}), InputError);
  CHECK_THROWS_AS(r.forbid_induced(Subspace(3)), InputError);
}

}  // namespace
}  // namespace trapspace
