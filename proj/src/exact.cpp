#include "cyclespace/exact.hpp"

#include <algorithm>

#include "cyclespace/errors.hpp"

namespace cyclespace {

namespace {

void make_primitive(SparseIntegerRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

Integer value_at(const SparseIntegerRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? it->second : Integer(0);
}

// a*x - b*y, merged over the union of supports.
SparseIntegerRow combine(const Integer& a, const SparseIntegerRow& x, const Integer& b,
                         const SparseIntegerRow& y) {
  SparseIntegerRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  Integer t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (t != 0) out.emplace_back(x[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

SparseIntegerRow primitive_row(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v)
    if (x != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  SparseIntegerRow row;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Integer scaled = v[i].get_num() * (l / v[i].get_den());
    row.emplace_back(i, std::move(scaled));
  }
  make_primitive(row);
  return row;
}

RationalVector to_dense(const SparseIntegerRow& row, std::size_t dimension) {
  RationalVector out(dimension, Rational(0));
  for (const auto& [c, v] : row) out[c] = Rational(v);
  return out;
}

RationalVector apply(const IntOperator& op, const RationalVector& v) {
  if (v.size() != op.cols()) throw ConfigError("vector length does not match operator");
  RationalVector out(op.rows(), Rational(0));
  for (std::size_t i = 0; i < op.rows(); ++i)
    for (const auto& e : op.row(i))
      if (v[e.col] != 0) out[i] += v[e.col] * Rational(static_cast<long>(e.value));
  return out;
}

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

SparseIntegerRow EchelonBasis::reduce(SparseIntegerRow v) const {
  for (std::size_t r = 0; r < rows_.size() && !v.empty(); ++r) {
    const Integer coeff = value_at(v, pivots_[r]);
    if (coeff == 0) continue;
    const Integer& pivot = value_at(rows_[r], pivots_[r]);
    const Integer g = gcd(coeff, pivot);
    v = combine(pivot / g, v, coeff / g, rows_[r]);
    make_primitive(v);
  }
  return v;
}

bool EchelonBasis::add(const RationalVector& v) {
  if (v.size() != dimension_) throw ConfigError("vector length does not match basis dimension");
  SparseIntegerRow row = reduce(primitive_row(v));
  if (row.empty()) return false;
  pivots_.push_back(row.front().first);
  rows_.push_back(std::move(row));
  return true;
}

bool EchelonBasis::contains(const RationalVector& v) const {
  if (v.size() != dimension_) throw ConfigError("vector length does not match basis dimension");
  return reduce(primitive_row(v)).empty();
}

std::size_t exact_rank(const std::vector<RationalVector>& vectors, std::size_t dimension) {
  EchelonBasis basis(dimension);
  for (const auto& v : vectors) basis.add(v);
  return basis.rank();
}

std::vector<RationalVector> exact_nullspace(const std::vector<RationalVector>& constraint_rows,
                                            std::size_t dimension) {
  std::vector<SparseIntegerRow> rows;
  std::vector<std::size_t> pivots;
  for (const auto& r : constraint_rows) {
    if (r.size() != dimension) throw ConfigError("constraint row has the wrong length");
    SparseIntegerRow row = primitive_row(r);
    for (std::size_t k = 0; k < rows.size() && !row.empty(); ++k) {
      const Integer coeff = value_at(row, pivots[k]);
      if (coeff == 0) continue;
      const Integer pv = value_at(rows[k], pivots[k]);
      const Integer g = gcd(coeff, pv);
      row = combine(pv / g, row, coeff / g, rows[k]);
      make_primitive(row);
    }
    if (row.empty()) continue;
    pivots.push_back(row.front().first);
    rows.push_back(std::move(row));
  }

  // Back-substitute so every pivot column is zero in all other rows.
  for (std::size_t k = rows.size(); k-- > 0;) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == k) continue;
      const Integer coeff = value_at(rows[i], pivots[k]);
      if (coeff == 0) continue;
      const Integer pv = value_at(rows[k], pivots[k]);
      const Integer g = gcd(coeff, pv);
      rows[i] = combine(pv / g, rows[i], coeff / g, rows[k]);
      make_primitive(rows[i]);
    }
  }

  std::vector<bool> is_pivot(dimension, false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<RationalVector> out;
  for (std::size_t f = 0; f < dimension; ++f) {
    if (is_pivot[f]) continue;
    // x_f = L, x_{pivot_i} = -row_i[f] * L / row_i[pivot_i].
    Integer l = 1;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (value_at(rows[i], f) != 0) {
        const Integer pv = value_at(rows[i], pivots[i]);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), pv.get_mpz_t());
      }
    RationalVector x(dimension, Rational(0));
    x[f] = l;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Integer a = value_at(rows[i], f);
      if (a == 0) continue;
      const Integer pv = value_at(rows[i], pivots[i]);
      x[pivots[i]] = Rational(Integer(-a * (l / pv)));
    }
    out.push_back(to_dense(primitive_row(x), dimension));
  }
  return out;
}

std::optional<RationalVector> coordinates_in(const std::vector<RationalVector>& basis,
                                             const RationalVector& target) {
  const std::size_t k = basis.size();
  const std::size_t n = target.size();
  for (const auto& b : basis)
    if (b.size() != n) throw ConfigError("basis vector length does not match target");

  // Augmented system [B | t] with n rows and k + 1 columns, solved by
  // Gauss-Jordan elimination over Q.
  std::vector<RationalVector> m(n, RationalVector(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) m[i][j] = basis[j][i];
    m[i][k] = target[i];
  }
  std::vector<std::size_t> pivot_row_of(k, n);
  std::size_t row = 0;
  for (std::size_t col = 0; col < k && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) throw ConfigError("coordinates_in needs linearly independent basis vectors");
    std::swap(m[sel], m[row]);
    const Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j <= k; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || m[i][col] == 0) continue;
      const Rational f = m[i][col];
      for (std::size_t j = col; j <= k; ++j)
        if (m[row][j] != 0) m[i][j] -= f * m[row][j];
    }
    pivot_row_of[col] = row;
    ++row;
  }
  if (row < k) throw ConfigError("coordinates_in needs linearly independent basis vectors");
  for (std::size_t i = row; i < n; ++i)
    if (m[i][k] != 0) return std::nullopt;
  RationalVector c(k);
  for (std::size_t j = 0; j < k; ++j) c[j] = m[pivot_row_of[j]][k];
  return c;
}

}  // namespace cyclespace
