#include "trapspace/encoding.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace trapspace {
namespace {

constexpr std::size_t kLineWidth = 78;

std::string arc_name(std::size_t id) { return "a" + std::to_string(id); }

std::string x_var(std::size_t id) { return "x_a" + std::to_string(id); }

std::string y_var(const std::vector<std::string>& names, const Literal& l) {
  return "y_" + names[l.variable] + (l.value ? "_1" : "_0");
}

// Writes `lead` followed by `terms` joined with `op`, wrapping before a
// term when the line would exceed kLineWidth.
void write_wrapped(std::ostringstream& out, const std::string& lead,
                   const std::vector<std::string>& terms, const std::string& op,
                   const std::string& tail) {
  std::string line = lead;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string piece = (i == 0 ? "" : op) + terms[i];
    if (i > 0 && line.size() + piece.size() > kLineWidth) {
      out << line << '\n';
      line.clear();
    }
    line += piece;
  }
  out << line << tail << '\n';
}

void write_mapping(std::ostringstream& out, const BooleanNetwork& net,
                   const std::vector<std::string>& names, const char* comment) {
  out << comment << " Variables:\n";
  for (std::size_t i = 0; i < net.size(); ++i) {
    out << comment << "   " << names[i] << " = " << net.name(i) << '\n';
  }
}

}  // namespace

std::vector<std::string> atom_names(const BooleanNetwork& net) {
  std::vector<std::string> out;
  std::set<std::string> taken;
  for (const std::string& raw : net.variables()) {
    std::string name;
    for (char c : raw) {
      const auto u = static_cast<unsigned char>(c);
      name += std::isalnum(u) ? static_cast<char>(std::tolower(u)) : '_';
    }
    if (!std::isalpha(static_cast<unsigned char>(name.front()))) name = "v" + name;
    std::string candidate = name;
    for (std::size_t k = 2; taken.count(candidate) != 0; ++k) {
      candidate = name + "_" + std::to_string(k);
    }
    taken.insert(candidate);
    out.push_back(candidate);
  }
  return out;
}

std::string emit_asp(const PrimeImplicantGraph& graph, ArcSetExtremum sense) {
  const BooleanNetwork& net = graph.network();
  const std::vector<std::string> names = atom_names(net);
  const bool minimal = sense == ArcSetExtremum::kMinimal;
  std::ostringstream out;

  out << "% Stable and consistent arc sets of the prime implicant graph ("
      << graph.size() << " arcs, " << net.size() << " variables).\n";
  if (minimal) {
    out << "% Enumerate subset-minimal answer sets over x/1; each induces a maximal\n"
           "% trap space (clingo: --heuristic=Domain --dom-mod=5,16 --enum-mode=domRec 0).\n";
  } else {
    out << "% Enumerate subset-maximal answer sets over x/1; each induces a minimal\n"
           "% trap space (clingo: --heuristic=Domain --dom-mod=3,16 --enum-mode=domRec 0).\n";
  }
  write_mapping(out, net, names, "%");
  out << '\n';

  for (const HyperArc& a : graph.arcs()) {
    const std::string id = arc_name(a.id);
    out << "head(" << names[a.head.variable] << ',' << (a.head.value ? 1 : 0) << ','
        << id << ").";
    for (const Literal& t : a.tail) {
      out << " tail(" << names[t.variable] << ',' << (t.value ? 1 : 0) << ',' << id
          << ").";
    }
    out << '\n';
  }
  out << '\n';
  out << "{x(ID) : head(V,C,ID)}.\n";
  out << ":- x(ID1), tail(V,C,ID1), not x(ID2) : head(V,C,ID2).\n";
  out << ":- x(ID1), x(ID2), head(V,1,ID1), head(V,0,ID2).\n";
  if (minimal) out << ":- {x(_)} 0.\n";
  out << "#show x/1.\n";
  return out.str();
}

std::string emit_ilp(const PrimeImplicantGraph& graph, ArcSetExtremum sense) {
  const BooleanNetwork& net = graph.network();
  const std::vector<std::string> names = atom_names(net);
  const bool minimal = sense == ArcSetExtremum::kMinimal;
  std::ostringstream out;

  out << "\\ 0-1 program for stable and consistent arc sets of the prime implicant\n"
      << "\\ graph (" << graph.size() << " arcs, " << net.size() << " variables).\n";
  if (minimal) {
    out << "\\ Optimal solutions are minimal arc sets inducing maximal trap spaces. To\n"
           "\\ enumerate all of them, add after each solution the no-good cut\n"
           "\\   sum of x_a over the chosen arcs E <= |E| - 1\n";
  } else {
    out << "\\ Optimal solutions are maximal arc sets inducing minimal trap spaces. To\n"
           "\\ enumerate all of them, add after each solution the no-good cut\n"
           "\\   sum of x_a over the arcs not chosen >= 1\n";
  }
  out << "\\ and re-solve until the program is infeasible.\n";
  write_mapping(out, net, names, "\\");

  std::vector<std::string> all_x;
  for (const HyperArc& a : graph.arcs()) all_x.push_back(x_var(a.id));

  out << (minimal ? "Minimize\n" : "Maximize\n");
  write_wrapped(out, " obj: ", all_x, " + ", "");
  out << "Subject To\n";

  out << "\\ ILP1: a literal is chosen iff some chosen arc targets it\n";
  for (std::size_t v = 0; v < net.size(); ++v) {
    for (bool c : {false, true}) {
      const Literal l{v, c};
      std::vector<std::string> terms{y_var(names, l)};
      for (std::size_t id : graph.arcs_with_head(l)) terms.push_back(x_var(id));
      write_wrapped(out, "", terms, " - ", " <= 0");
      for (std::size_t id : graph.arcs_with_head(l)) {
        out << x_var(id) << " - " << y_var(names, l) << " <= 0\n";
      }
    }
  }
  out << "\\ ILP2: stability\n";
  for (const HyperArc& a : graph.arcs()) {
    for (const Literal& t : a.tail) {
      out << x_var(a.id) << " - " << y_var(names, t) << " <= 0\n";
    }
  }
  out << "\\ ILP3: consistency\n";
  for (std::size_t v = 0; v < net.size(); ++v) {
    out << y_var(names, {v, false}) << " + " << y_var(names, {v, true}) << " <= 1\n";
  }
  if (minimal) {
    out << "\\ non-empty solution\n";
    write_wrapped(out, "", all_x, " + ", " >= 1");
  }

  out << "Binary\n";
  for (const std::string& x : all_x) out << x << '\n';
  for (std::size_t v = 0; v < net.size(); ++v) {
    out << y_var(names, {v, false}) << '\n' << y_var(names, {v, true}) << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace trapspace
