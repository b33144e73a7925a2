#include "trapspace/network.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "trapspace/error.hpp"

namespace trapspace {

bool is_valid_identifier(std::string_view name) {
  if (name.empty()) return false;
  const auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && name.front() != '_') return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

BooleanNetwork::BooleanNetwork(std::vector<std::string> variables,
                               std::vector<Expression> functions)
    : variables_(std::move(variables)), functions_(std::move(functions)) {
  if (variables_.empty()) throw InputError("a network needs at least one variable");
  if (variables_.size() != functions_.size()) {
    throw InputError("network has " + std::to_string(variables_.size()) +
                     " variables but " + std::to_string(functions_.size()) +
                     " functions");
  }
  std::unordered_set<std::string_view> seen;
  for (const std::string& name : variables_) {
    if (!is_valid_identifier(name)) {
      throw InputError("invalid variable name '" + name + "'");
    }
    if (!seen.insert(name).second) {
      throw InputError("duplicate variable name '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    for (std::size_t v : syntactic_support(functions_[i])) {
      if (v >= variables_.size()) {
        throw InputError("function of '" + variables_[i] +
                         "' references undeclared variable " + std::to_string(v));
      }
    }
  }
}

std::optional<std::size_t> BooleanNetwork::index_of(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

bool operator==(const BooleanNetwork& a, const BooleanNetwork& b) {
  return a.variables_ == b.variables_ && a.functions_ == b.functions_;
}

Subspace image_state(const BooleanNetwork& net, const Subspace& state) {
  if (state.size() != net.size() || !state.is_state()) {
    throw InputError("image_state needs a full state over the network");
  }
  Subspace image(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    image.fix(i, evaluate(net.function(i), state));
  }
  return image;
}

Subspace image_subspace(const BooleanNetwork& net, const Subspace& p,
                        std::size_t support_cap) {
  if (p.size() != net.size()) {
    throw InputError("subspace width does not match the network");
  }
  Subspace image(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (auto c = constant_value(restrict_to(net.function(i), p), support_cap)) {
      image.fix(i, *c);
    }
  }
  return image;
}

bool is_trap_space(const BooleanNetwork& net, const Subspace& p,
                   std::size_t support_cap) {
  if (p.size() != net.size()) {
    throw InputError("subspace width does not match the network");
  }
  // F[p] <= p only constrains the variables fixed in p.
  for (std::size_t i = 0; i < net.size(); ++i) {
    if (!p.is_fixed(i)) continue;
    auto c = constant_value(restrict_to(net.function(i), p), support_cap);
    if (!c || *c != p.value(i)) return false;
  }
  return true;
}

TabulatedNetwork::TabulatedNetwork(const BooleanNetwork& net,
                                   std::size_t support_cap) {
  tables_.reserve(net.size());
  for (const Expression& f : net.functions()) {
    tables_.push_back(essential_table(tabulate(f, support_cap)));
  }
}

StateCode TabulatedNetwork::image(StateCode state) const {
  const std::size_t n = size();
  StateCode out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const TruthTable& t = tables_[i];
    std::size_t row = 0;
    for (std::size_t j = 0; j < t.arity(); ++j) {
      row |= static_cast<std::size_t>((state >> (n - 1 - t.support[j])) & 1) << j;
    }
    if (t.at(row)) out |= StateCode{1} << (n - 1 - i);
  }
  return out;
}

bool TabulatedNetwork::is_trap_space(const Subspace& p) const {
  if (p.size() != size()) {
    throw InputError("subspace width does not match the network");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    if (!p.is_fixed(i)) continue;
    const TruthTable& t = tables_[i];
    std::size_t care = 0;
    std::size_t vals = 0;
    for (std::size_t j = 0; j < t.arity(); ++j) {
      if (p.is_fixed(t.support[j])) {
        care |= std::size_t{1} << j;
        if (p.value(t.support[j])) vals |= std::size_t{1} << j;
      }
    }
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if ((r & care) == vals && t.at(r) != p.value(i)) return false;
    }
  }
  return true;
}

}  // namespace trapspace
