#include "cyclespace/int_operator.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "cyclespace/errors.hpp"

namespace cyclespace {

namespace {

void require_same_shape(const IntOperator& a, const IntOperator& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ConfigError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                      std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                      std::to_string(b.cols()));
}

IntOperator combine(const IntOperator& a, const IntOperator& b, IntOperator::Value sign) {
  IntOperator out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& e : a.row(i)) out.add(i, e.col, e.value);
    for (const auto& e : b.row(i)) out.add(i, e.col, sign * e.value);
  }
  return out;
}

}  // namespace

IntOperator::IntOperator(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

IntOperator IntOperator::identity(std::size_t n) {
  IntOperator out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.rows_[i].push_back({i, 1});
  return out;
}

IntOperator IntOperator::projector(std::size_t n, IndexRange range) {
  IntOperator out(n, n);
  for (std::size_t i = range.begin; i < range.end; ++i) out.rows_[i].push_back({i, 1});
  return out;
}

std::size_t IntOperator::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

IntOperator::Value IntOperator::at(std::size_t i, std::size_t j) const {
  const auto& r = rows_.at(i);
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != r.end() && it->col == j) ? it->value : 0;
}

void IntOperator::add(std::size_t i, std::size_t j, Value value) {
  if (i >= rows() || j >= cols_) throw ConfigError("operator entry out of range");
  if (value == 0) return;
  auto& r = rows_[i];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const Entry& e, std::size_t c) { return e.col < c; });
  if (it != r.end() && it->col == j) {
    it->value += value;
    if (it->value == 0) r.erase(it);
  } else {
    r.insert(it, {j, value});
  }
}

IntOperator IntOperator::transpose() const {
  IntOperator out(cols_, rows());
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& e : rows_[i]) out.rows_[e.col].push_back({i, e.value});
  return out;
}

IntOperator IntOperator::block(IndexRange row_range, IndexRange col_range) const {
  IntOperator out(rows(), cols_);
  for (std::size_t i = row_range.begin; i < row_range.end && i < rows(); ++i)
    for (const auto& e : rows_[i])
      if (col_range.contains(e.col)) out.rows_[i].push_back(e);
  return out;
}

IntOperator::Value IntOperator::max_abs() const {
  Value m = 0;
  for (const auto& r : rows_)
    for (const auto& e : r) m = std::max(m, std::abs(e.value));
  return m;
}

std::vector<IntOperator::Triplet> IntOperator::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows(); ++i)
    for (const auto& e : rows_[i]) out.push_back({i, e.col, e.value});
  return out;
}

std::string IntOperator::to_coordinate_list() const {
  std::ostringstream os;
  for (const auto& t : triplets()) os << t.row << ' ' << t.col << ' ' << t.value << '\n';
  return os.str();
}

IntOperator operator*(const IntOperator& a, const IntOperator& b) {
  if (a.cols() != b.rows())
    throw ConfigError("operator product: inner dimensions " + std::to_string(a.cols()) +
                      " and " + std::to_string(b.rows()) + " differ");
  IntOperator out(a.rows(), b.cols());
  std::vector<IntOperator::Value> acc(b.cols(), 0);
  std::vector<std::size_t> touched;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& ea : a.rows_[i])
      for (const auto& eb : b.rows_[ea.col]) {
        if (acc[eb.col] == 0) touched.push_back(eb.col);
        acc[eb.col] += ea.value * eb.value;
      }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t c : touched) {
      if (acc[c] != 0) out.rows_[i].push_back({c, acc[c]});
      acc[c] = 0;
    }
    touched.clear();
  }
  return out;
}

IntOperator operator+(const IntOperator& a, const IntOperator& b) {
  require_same_shape(a, b, "operator sum");
  return combine(a, b, 1);
}

IntOperator operator-(const IntOperator& a, const IntOperator& b) {
  require_same_shape(a, b, "operator difference");
  return combine(a, b, -1);
}

IntOperator operator*(IntOperator::Value s, const IntOperator& a) {
  IntOperator out(a.rows(), a.cols());
  if (s == 0) return out;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (const auto& e : a.rows_[i]) out.rows_[i].push_back({e.col, s * e.value});
  return out;
}

bool operator==(const IntOperator& a, const IntOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto& ra = a.rows_[i];
    const auto& rb = b.rows_[i];
    if (ra.size() != rb.size()) return false;
    for (std::size_t k = 0; k < ra.size(); ++k)
      if (ra[k].col != rb[k].col || ra[k].value != rb[k].value) return false;
  }
  return true;
}

IntOperator commutator(const IntOperator& x, const IntOperator& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows())
    throw ConfigError("commutator needs two square operators of the same size");
  return x * y - y * x;
}

CommutatorReport compare(IntOperator lhs, IntOperator rhs) {
  require_same_shape(lhs, rhs, "operator comparison");
  CommutatorReport report;
  report.residual = lhs - rhs;
  report.is_exact_match = report.residual.is_zero();
  report.lhs = std::move(lhs);
  report.rhs = std::move(rhs);
  return report;
}

}  // namespace cyclespace
