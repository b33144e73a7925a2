#include "trapspace/expression.hpp"

#include <algorithm>

#include "trapspace/error.hpp"
#include "trapspace/truth_table.hpp"

namespace trapspace {

Expression Expression::constant(bool value) {
  return Expression(std::make_shared<const Node>(
      Node{Kind::kConstant, value, 0, {}}));
}

Expression Expression::variable(std::size_t index) {
  return Expression(std::make_shared<const Node>(
      Node{Kind::kVariable, false, index, {}}));
}

Expression Expression::negation(Expression child) {
  std::vector<Expression> children;
  children.push_back(std::move(child));
  return Expression(std::make_shared<const Node>(
      Node{Kind::kNot, false, 0, std::move(children)}));
}

Expression Expression::conjunction(std::vector<Expression> operands) {
  if (operands.size() < 2) throw InputError("conjunction needs two operands");
  return Expression(std::make_shared<const Node>(
      Node{Kind::kAnd, false, 0, std::move(operands)}));
}

Expression Expression::disjunction(std::vector<Expression> operands) {
  if (operands.size() < 2) throw InputError("disjunction needs two operands");
  return Expression(std::make_shared<const Node>(
      Node{Kind::kOr, false, 0, std::move(operands)}));
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expression::Kind::kConstant: return a.constant() == b.constant();
    case Expression::Kind::kVariable: return a.variable() == b.variable();
    default:
      return std::equal(a.children().begin(), a.children().end(),
                        b.children().begin(), b.children().end());
  }
}

namespace {

void print(const Expression& f, std::span<const std::string> names,
           std::string& out) {
  using Kind = Expression::Kind;
  auto print_child = [&](const Expression& c, bool wrap) {
    if (wrap) out += '(';
    print(c, names, out);
    if (wrap) out += ')';
  };
  switch (f.kind()) {
    case Kind::kConstant:
      out += f.constant() ? '1' : '0';
      return;
    case Kind::kVariable:
      if (f.variable() >= names.size()) {
        throw InputError("no name for variable " + std::to_string(f.variable()));
      }
      out += names[f.variable()];
      return;
    case Kind::kNot: {
      const Expression& c = f.children()[0];
      out += '!';
      print_child(c, c.kind() == Kind::kAnd || c.kind() == Kind::kOr);
      return;
    }
    case Kind::kAnd:
    case Kind::kOr: {
      const bool is_and = f.kind() == Kind::kAnd;
      bool first = true;
      for (const Expression& c : f.children()) {
        if (!first) out += is_and ? " & " : " | ";
        first = false;
        const bool wrap = c.kind() == Kind::kOr ||
                          (is_and && c.kind() == Kind::kAnd);
        print_child(c, wrap);
      }
      return;
    }
  }
}

void collect_support(const Expression& f, std::vector<std::size_t>& out) {
  if (f.kind() == Expression::Kind::kVariable) {
    out.push_back(f.variable());
    return;
  }
  for (const Expression& c : f.children()) collect_support(c, out);
}

Expression fold_nary(Expression::Kind kind, std::vector<Expression> operands) {
  const bool absorbing = kind == Expression::Kind::kOr;
  std::vector<Expression> kept;
  for (Expression& c : operands) {
    if (c.is_constant()) {
      if (c.constant() == absorbing) return Expression::constant(absorbing);
      continue;
    }
    kept.push_back(std::move(c));
  }
  if (kept.empty()) return Expression::constant(!absorbing);
  if (kept.size() == 1) return std::move(kept.front());
  return kind == Expression::Kind::kAnd
             ? Expression::conjunction(std::move(kept))
             : Expression::disjunction(std::move(kept));
}

}  // namespace

std::string to_string(const Expression& f, std::span<const std::string> names) {
  std::string out;
  print(f, names, out);
  return out;
}

bool evaluate(const Expression& f, const Subspace& state) {
  return evaluate_with(f, [&](std::size_t i) {
    if (i >= state.size() || !state.is_fixed(i)) {
      throw InputError("state does not assign variable " + std::to_string(i));
    }
    return state.value(i);
  });
}

Expression restrict_to(const Expression& f, const Subspace& p) {
  using Kind = Expression::Kind;
  switch (f.kind()) {
    case Kind::kConstant:
      return f;
    case Kind::kVariable:
      if (f.variable() < p.size() && p.is_fixed(f.variable())) {
        return Expression::constant(p.value(f.variable()));
      }
      return f;
    case Kind::kNot: {
      Expression c = restrict_to(f.children()[0], p);
      if (c.is_constant()) return Expression::constant(!c.constant());
      if (c == f.children()[0]) return f;
      return Expression::negation(std::move(c));
    }
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Expression> operands;
      operands.reserve(f.children().size());
      bool changed = false;
      for (const Expression& c : f.children()) {
        operands.push_back(restrict_to(c, p));
        changed = changed || !(operands.back() == c);
      }
      if (!changed) return f;
      return fold_nary(f.kind(), std::move(operands));
    }
  }
  return f;
}

Expression reindex(const Expression& f,
                   std::span<const std::optional<std::size_t>> mapping) {
  using Kind = Expression::Kind;
  switch (f.kind()) {
    case Kind::kConstant:
      return f;
    case Kind::kVariable:
      if (f.variable() >= mapping.size() || !mapping[f.variable()]) {
        throw InputError("variable " + std::to_string(f.variable()) +
                         " has no image under reindexing");
      }
      return Expression::variable(*mapping[f.variable()]);
    case Kind::kNot:
      return Expression::negation(reindex(f.children()[0], mapping));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<Expression> operands;
      for (const Expression& c : f.children()) {
        operands.push_back(reindex(c, mapping));
      }
      return f.kind() == Kind::kAnd ? Expression::conjunction(std::move(operands))
                                    : Expression::disjunction(std::move(operands));
    }
  }
  return f;
}

std::vector<std::size_t> syntactic_support(const Expression& f) {
  std::vector<std::size_t> support;
  collect_support(f, support);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  return support;
}

std::size_t max_variable_index(const Expression& f) {
  const auto support = syntactic_support(f);
  return support.empty() ? 0 : support.back();
}

std::optional<bool> constant_value(const Expression& f, std::size_t cap) {
  if (f.is_constant()) return f.constant();
  return tabulate(f, cap).constant();
}

std::vector<std::size_t> essential_support(const Expression& f,
                                           std::size_t cap) {
  return essential_table(tabulate(f, cap)).support;
}

}  // namespace trapspace
