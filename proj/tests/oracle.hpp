#pragma once

// Brute-force reference computations for the tests. Everything here works
// from coordinates and dense matrices and shares no code with the library
// apart from the vertex ordering it is handed.

#include <gmpxx.h>

#include <cstdint>
#include <cstdlib>
#include <vector>

#include "cyclespace/group.hpp"
#include "cyclespace/int_operator.hpp"

namespace oracle {

using Dense = std::vector<std::vector<long long>>;

inline int signed_rep(int m, int c) {
  c = ((c % m) + m) % m;
  return c > m / 2 ? c - m : c;
}

inline int level(int m, int c) { return std::abs(signed_rep(m, c)); }

inline int distance(int m, const std::vector<int>& v) {
  int d = 0;
  for (int c : v) d += level(m, c);
  return d;
}

/// All of Z_m^N as residue tuples, odometer order.
inline std::vector<std::vector<int>> all_vertices(int m, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  for (;;) {
    out.push_back(v);
    int k = n - 1;
    while (k >= 0 && ++v[static_cast<std::size_t>(k)] == m) v[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return out;
}

/// (#level-one, #level-two) coordinate counts.
inline std::pair<int, int> signature(int m, const std::vector<int>& v) {
  int p = 0, q = 0;
  for (int c : v) {
    const int l = level(m, c);
    if (l == 1) ++p;
    if (l == 2) ++q;
  }
  return {p, q};
}

inline bool adjacent(int m, const std::vector<int>& a, const std::vector<int>& b) {
  int diffs = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const int d = ((b[k] - a[k]) % m + m) % m;
    if (d == 0) continue;
    if (d != 1 && d != m - 1) return false;
    ++diffs;
  }
  return diffs == 1;
}

inline std::vector<std::vector<int>> table_vertices(const cyclespace::VertexTable& t) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto c = t.at(i).coords();
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<long long>(n, 0)); }

enum class Part { all, outer, inner, neutral };

/// Row v, column w: 1 when v ~ w, filtered by d(v) - d(w).
inline Dense adjacency(const cyclespace::VertexTable& t, Part part = Part::all) {
  const int m = t.modulus();
  const auto vs = table_vertices(t);
  Dense a = zeros(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (!adjacent(m, vs[i], vs[j])) continue;
      const int dd = distance(m, vs[i]) - distance(m, vs[j]);
      if (part == Part::all || (part == Part::outer && dd == 1) ||
          (part == Part::inner && dd == -1) || (part == Part::neutral && dd == 0))
        a[i][j] = 1;
    }
  return a;
}

inline std::size_t find(const std::vector<std::vector<int>>& vs, int m, std::vector<int> v) {
  for (int& c : v) c = signed_rep(m, c);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    bool eq = true;
    for (std::size_t k = 0; k < v.size(); ++k) eq = eq && signed_rep(m, vs[i][k]) == v[k];
    if (eq) return i;
  }
  std::abort();
}

/// (R_1 f)(v) = sum over level-one coordinates k of f(v with coordinate k negated).
inline Dense r1(const cyclespace::VertexTable& t) {
  const int m = t.modulus();
  const auto vs = table_vertices(t);
  Dense r = zeros(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t k = 0; k < vs[i].size(); ++k)
      if (level(m, vs[i][k]) == 1) {
        auto w = vs[i];
        w[k] = -w[k];
        r[i][find(vs, m, w)] += 1;
      }
  return r;
}

inline Dense reflection(const cyclespace::VertexTable& t, std::size_t k) {
  const int m = t.modulus();
  const auto vs = table_vertices(t);
  Dense r = zeros(vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto w = vs[i];
    w[k] = -w[k];
    r[i][find(vs, m, w)] = 1;
  }
  return r;
}

inline Dense mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  Dense out(n, std::vector<long long>(c, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l])
        for (std::size_t j = 0; j < c; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline Dense add(const Dense& a, const Dense& b, long long sb = 1) {
  Dense out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += sb * b[i][j];
  return out;
}

inline Dense transpose(const Dense& a) {
  Dense out(a.empty() ? 0 : a[0].size(), std::vector<long long>(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

inline Dense to_dense(const cyclespace::IntOperator& x) {
  Dense out(x.rows(), std::vector<long long>(x.cols(), 0));
  for (const auto& t : x.triplets()) out[t.row][t.col] = t.value;
  return out;
}

inline std::vector<long long> apply(const Dense& a, const std::vector<long long>& x) {
  std::vector<long long> y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

/// Rank over Q by dense Gauss-Jordan on rationals.
inline std::size_t rank(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const Dense& a) {
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& row : a) {
    rows.emplace_back();
    for (long long x : row) rows.back().emplace_back(static_cast<long>(x));
  }
  return rank(rows);
}

}  // namespace oracle
