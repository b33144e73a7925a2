#include <cctype>

#include "trapspace/error.hpp"
#include "trapspace/expression.hpp"

namespace trapspace {
namespace {

bool is_identifier_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_identifier_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Recursive descent over
//   disjunction := conjunction ('|' conjunction)*
//   conjunction := unary ('&' unary)*
//   unary       := '!' unary | '(' disjunction ')' | '0' | '1' | identifier
class Parser {
 public:
  Parser(std::string_view text,
         const std::unordered_map<std::string, std::size_t>& index)
      : text_(text), index_(index) {}

  Expression run() {
    Expression f = disjunction();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Expression disjunction() {
    std::vector<Expression> operands;
    operands.push_back(conjunction());
    while (accept('|')) operands.push_back(conjunction());
    if (operands.size() == 1) return std::move(operands.front());
    return Expression::disjunction(std::move(operands));
  }

  Expression conjunction() {
    std::vector<Expression> operands;
    operands.push_back(unary());
    while (accept('&')) operands.push_back(unary());
    if (operands.size() == 1) return std::move(operands.front());
    return Expression::conjunction(std::move(operands));
  }

  Expression unary() {
    skip_space();
    if (pos_ == text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      return Expression::negation(unary());
    }
    if (c == '(') {
      ++pos_;
      Expression inner = disjunction();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '0' || c == '1') {
      const std::size_t start = pos_++;
      if (pos_ < text_.size() && is_identifier_char(text_[pos_])) {
        pos_ = start;
        fail("malformed constant");
      }
      return Expression::constant(c == '1');
    }
    if (is_identifier_start(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_identifier_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = index_.find(name);
      if (it == index_.end()) throw UnknownIdentifierError(std::move(name));
      return Expression::variable(it->second);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("syntax error: " + message, pos_);
  }

  std::string_view text_;
  const std::unordered_map<std::string, std::size_t>& index_;
  std::size_t pos_ = 0;
};

}  // namespace

ExpressionParser::ExpressionParser(std::span<const std::string> vocabulary) {
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    if (!index_.emplace(vocabulary[i], i).second) {
      throw InputError("duplicate variable name '" + vocabulary[i] + "'");
    }
  }
}

Expression ExpressionParser::parse(std::string_view text) const {
  return Parser(text, index_).run();
}

Expression parse_expression(std::string_view text,
                            std::span<const std::string> vocabulary) {
  return ExpressionParser(vocabulary).parse(text);
}

}  // namespace trapspace
