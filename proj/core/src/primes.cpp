#include "trapspace/primes.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "trapspace/error.hpp"
#include "trapspace/truth_table.hpp"

namespace trapspace {
namespace {

// A cube over at most 32 local variables: `care` marks fixed positions,
// `bits` their values (zero outside `care`).
struct Cube {
  std::uint32_t care;
  std::uint32_t bits;

  std::uint64_t key() const {
    return (std::uint64_t{care} << 32) | bits;
  }
};

// Prime cubes of the on-set `target` of a table via iterated merging of
// adjacent cubes (Quine-McCluskey without the covering step).
std::vector<Cube> prime_cubes(const TruthTable& table, bool target) {
  const std::size_t k = table.arity();
  const std::uint32_t full = k == 32 ? ~std::uint32_t{0}
                                     : (std::uint32_t{1} << k) - 1;
  std::vector<Cube> level;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.at(r) == target) level.push_back({full, static_cast<std::uint32_t>(r)});
  }

  std::vector<Cube> primes;
  while (!level.empty()) {
    std::unordered_set<std::uint64_t> present;
    present.reserve(level.size() * 2);
    for (const Cube& c : level) present.insert(c.key());

    std::unordered_set<std::uint64_t> merged;
    std::unordered_set<std::uint64_t> next_keys;
    std::vector<Cube> next;
    for (const Cube& c : level) {
      for (std::uint32_t rest = c.care; rest != 0; rest &= rest - 1) {
        const std::uint32_t bit = rest & (~rest + 1);
        if (c.bits & bit) continue;
        const Cube partner{c.care, c.bits | bit};
        if (!present.contains(partner.key())) continue;
        merged.insert(c.key());
        merged.insert(partner.key());
        const Cube joined{c.care & ~bit, c.bits};
        if (next_keys.insert(joined.key()).second) next.push_back(joined);
      }
    }
    for (const Cube& c : level) {
      if (!merged.contains(c.key())) primes.push_back(c);
    }
    level = std::move(next);
  }
  return primes;
}

bool arc_before(const HyperArc& a, const HyperArc& b) {
  if (a.head.variable != b.head.variable) return a.head.variable < b.head.variable;
  if (a.head.value != b.head.value) return a.head.value;
  return std::lexicographical_compare(a.tail.begin(), a.tail.end(),
                                      b.tail.begin(), b.tail.end(),
                                      literal_before);
}

}  // namespace

bool literal_before(const Literal& a, const Literal& b) {
  if (a.variable != b.variable) return a.variable < b.variable;
  return a.value && !b.value;
}

PrimeImplicantGraph::PrimeImplicantGraph(BooleanNetwork network,
                                         std::vector<HyperArc> arcs)
    : network_(std::move(network)),
      arcs_(std::move(arcs)),
      by_head_(2 * network_.size()) {
  for (std::size_t i = 0; i < arcs_.size(); ++i) {
    const HyperArc& a = arcs_[i];
    if (a.id != i + 1) throw InputError("arc ids must be 1..|arcs| in order");
    if (a.tail.empty()) throw InputError("arc with empty tail");
    if (a.head.variable >= network_.size()) throw InputError("arc head out of range");
    for (std::size_t t = 0; t < a.tail.size(); ++t) {
      if (a.tail[t].variable >= network_.size()) {
        throw InputError("arc tail out of range");
      }
      if (t > 0 && a.tail[t - 1].variable == a.tail[t].variable) {
        throw InputError("arc tail repeats a variable");
      }
    }
    by_head_[a.head.index()].push_back(a.id);
  }
}

const HyperArc& PrimeImplicantGraph::arc(std::size_t id) const {
  if (id == 0 || id > arcs_.size()) {
    throw InputError("unknown arc id " + std::to_string(id));
  }
  return arcs_[id - 1];
}

std::vector<PrimeImplicant> c_prime_implicants(const Expression& f, bool c,
                                               std::size_t target,
                                               std::size_t n,
                                               std::size_t support_cap) {
  if (target >= n) throw InputError("prime implicant target out of range");
  const TruthTable table = essential_table(tabulate(f, support_cap));
  if (auto constant = table.constant()) {
    if (*constant != c) return {};
    Subspace p(n);
    p.fix(target, c);
    return {PrimeImplicant{std::move(p), c, target}};
  }

  std::vector<PrimeImplicant> out;
  for (const Cube& cube : prime_cubes(table, c)) {
    Subspace p(n);
    for (std::size_t j = 0; j < table.arity(); ++j) {
      if (cube.care & (std::uint32_t{1} << j)) {
        p.fix(table.support[j], (cube.bits >> j) & 1);
      }
    }
    out.push_back(PrimeImplicant{std::move(p), c, target});
  }
  std::sort(out.begin(), out.end(),
            [](const PrimeImplicant& a, const PrimeImplicant& b) {
              return a.subspace < b.subspace;
            });
  return out;
}

PrimeImplicantGraph build_graph(const BooleanNetwork& net,
                                std::size_t support_cap) {
  std::vector<HyperArc> arcs;
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (bool c : {true, false}) {
      for (const PrimeImplicant& imp :
           c_prime_implicants(net.function(i), c, i, net.size(), support_cap)) {
        HyperArc arc;
        arc.head = Literal{i, c};
        const Bits& mask = imp.subspace.fixed_mask();
        for (std::size_t v = mask.find_first(); v != Bits::npos;
             v = mask.find_next(v)) {
          arc.tail.push_back(Literal{v, imp.subspace.value(v)});
        }
        arcs.push_back(std::move(arc));
      }
    }
  }
  std::sort(arcs.begin(), arcs.end(), arc_before);
  for (std::size_t i = 0; i < arcs.size(); ++i) arcs[i].id = i + 1;
  return PrimeImplicantGraph(net, std::move(arcs));
}

std::string format_literals(std::span<const Literal> literals,
                            const BooleanNetwork& net) {
  std::string out;
  for (const Literal& l : literals) {
    if (!out.empty()) out += ',';
    out += net.name(l.variable);
    out += l.value ? "=1" : "=0";
  }
  return out;
}

std::string format_arc(const HyperArc& arc, const BooleanNetwork& net) {
  const Literal head[] = {arc.head};
  return std::to_string(arc.id) + " " + format_literals(arc.tail, net) +
         " -> " + format_literals(head, net);
}

}  // namespace trapspace
