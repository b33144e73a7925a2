#include "trapspace/truth_table.hpp"

#include <algorithm>

#include "trapspace/error.hpp"

namespace trapspace {
namespace {

Bits projection(std::size_t arity, std::size_t j) {
  Bits column(std::size_t{1} << arity);
  for (std::size_t r = 0; r < column.size(); ++r) {
    if ((r >> j) & 1) column.set(r);
  }
  return column;
}

Bits evaluate_rows(const Expression& f, const std::vector<std::size_t>& support,
                   const std::vector<Bits>& columns) {
  const std::size_t width = std::size_t{1} << support.size();
  switch (f.kind()) {
    case Expression::Kind::kConstant: {
      Bits out(width);
      if (f.constant()) out.set();
      return out;
    }
    case Expression::Kind::kVariable: {
      auto it = std::lower_bound(support.begin(), support.end(), f.variable());
      if (it == support.end() || *it != f.variable()) {
        throw InputError("tabulation support misses variable " +
                         std::to_string(f.variable()));
      }
      return columns[static_cast<std::size_t>(it - support.begin())];
    }
    case Expression::Kind::kNot:
      return ~evaluate_rows(f.children()[0], support, columns);
    case Expression::Kind::kAnd: {
      Bits out = evaluate_rows(f.children()[0], support, columns);
      for (std::size_t i = 1; i < f.children().size(); ++i) {
        out &= evaluate_rows(f.children()[i], support, columns);
      }
      return out;
    }
    case Expression::Kind::kOr: {
      Bits out = evaluate_rows(f.children()[0], support, columns);
      for (std::size_t i = 1; i < f.children().size(); ++i) {
        out |= evaluate_rows(f.children()[i], support, columns);
      }
      return out;
    }
  }
  return Bits(width);
}

}  // namespace

std::optional<bool> TruthTable::constant() const {
  if (rows.none()) return false;
  if (rows.all()) return true;
  return std::nullopt;
}

bool TruthTable::depends_on(std::size_t j) const {
  const std::size_t bit = std::size_t{1} << j;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!(r & bit) && rows.test(r) != rows.test(r | bit)) return true;
  }
  return false;
}

TruthTable tabulate(const Expression& f, std::vector<std::size_t> support,
                    std::size_t cap) {
  if (support.size() > cap) throw SupportTooLargeError(support.size(), cap);
  std::vector<Bits> columns;
  columns.reserve(support.size());
  for (std::size_t j = 0; j < support.size(); ++j) {
    columns.push_back(projection(support.size(), j));
  }
  Bits rows = evaluate_rows(f, support, columns);
  return TruthTable{std::move(support), std::move(rows)};
}

TruthTable tabulate(const Expression& f, std::size_t cap) {
  return tabulate(f, syntactic_support(f), cap);
}

TruthTable essential_table(const TruthTable& table) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < table.arity(); ++j) {
    if (table.depends_on(j)) keep.push_back(j);
  }
  if (keep.size() == table.arity()) return table;

  TruthTable out;
  for (std::size_t j : keep) out.support.push_back(table.support[j]);
  out.rows.resize(std::size_t{1} << keep.size());
  // Dropped variables are fictitious, so reading them as 0 is exact.
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    std::size_t source = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      if ((r >> j) & 1) source |= std::size_t{1} << keep[j];
    }
    if (table.rows.test(source)) out.rows.set(r);
  }
  return out;
}

}  // namespace trapspace
