#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trapspace/subspace.hpp"

namespace trapspace {

inline constexpr std::size_t kDefaultSupportCap = 16;

// Immutable Boolean formula over variable indices. Nodes are shared, so
// copies are cheap and safe to hand to other threads.
class Expression {
 public:
  enum class Kind { kConstant, kVariable, kNot, kAnd, kOr };

  static Expression constant(bool value);
  static Expression variable(std::size_t index);
  static Expression negation(Expression child);
  // Both require at least two operands.
  static Expression conjunction(std::vector<Expression> operands);
  static Expression disjunction(std::vector<Expression> operands);

  Kind kind() const { return node_->kind; }
  bool is_constant() const { return kind() == Kind::kConstant; }
  bool constant() const { return node_->value; }
  std::size_t variable() const { return node_->index; }
  std::span<const Expression> children() const { return node_->children; }

  // Structural equality.
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node {
    Kind kind;
    bool value = false;
    std::size_t index = 0;
    std::vector<Expression> children;
  };

  explicit Expression(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Parses `!`, `&`, `|`, `0`, `1`, parentheses and identifiers
// [A-Za-z_][A-Za-z0-9_]* resolved against `vocabulary`. Precedence is
// ! > & > |. A chain `a & b & c` becomes one n-ary node; parenthesized
// groups stay nested.
Expression parse_expression(std::string_view text,
                            std::span<const std::string> vocabulary);

// Reusable form of parse_expression for many formulas over one vocabulary.
class ExpressionParser {
 public:
  explicit ExpressionParser(std::span<const std::string> vocabulary);
  Expression parse(std::string_view text) const;

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

// Inverse of parse_expression: parse_expression(to_string(f, names), names)
// is structurally equal to f.
std::string to_string(const Expression& f,
                      std::span<const std::string> names);

template <typename ValueOf>
bool evaluate_with(const Expression& f, const ValueOf& value_of) {
  switch (f.kind()) {
    case Expression::Kind::kConstant: return f.constant();
    case Expression::Kind::kVariable: return value_of(f.variable());
    case Expression::Kind::kNot: return !evaluate_with(f.children()[0], value_of);
    case Expression::Kind::kAnd:
      for (const Expression& c : f.children()) {
        if (!evaluate_with(c, value_of)) return false;
      }
      return true;
    case Expression::Kind::kOr:
      for (const Expression& c : f.children()) {
        if (evaluate_with(c, value_of)) return true;
      }
      return false;
  }
  return false;
}

// `state` must fix every variable f mentions.
bool evaluate(const Expression& f, const Subspace& state);

// Substitutes the fixed values of p and folds constants locally. The result
// mentions no variable fixed in p.
Expression restrict_to(const Expression& f, const Subspace& p);

// Rewrites variable indices; `mapping[i]` is the new index of variable i.
// Every variable f mentions must be mapped.
Expression reindex(const Expression& f,
                   std::span<const std::optional<std::size_t>> mapping);

// Variables that occur in f, ascending.
std::vector<std::size_t> syntactic_support(const Expression& f);
std::size_t max_variable_index(const Expression& f);

// Semantic constancy, decided by tabulating f over its syntactic support.
// Throws SupportTooLargeError when the support exceeds `cap`.
std::optional<bool> constant_value(const Expression& f,
                                   std::size_t cap = kDefaultSupportCap);

// Variables f actually depends on, ascending.
std::vector<std::size_t> essential_support(const Expression& f,
                                           std::size_t cap = kDefaultSupportCap);

}  // namespace trapspace
