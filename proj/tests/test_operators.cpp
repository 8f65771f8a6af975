#include <doctest.h>

#include "cyclespace/errors.hpp"
#include "cyclespace/operators.hpp"
#include "oracle.hpp"

using namespace cyclespace;

namespace {

/// Keeps rows in `to` and columns in `from`.
oracle::Dense block(const oracle::Dense& a, IndexRange to, IndexRange from) {
  oracle::Dense out = oracle::zeros(a.size());
  for (std::size_t i = to.begin; i < to.end; ++i)
    for (std::size_t j = from.begin; j < from.end; ++j) out[i][j] = a[i][j];
  return out;
}

oracle::Dense columns(const oracle::Dense& a, IndexRange from) {
  return block(a, {0, a.size()}, from);
}

std::vector<long long> delta(std::size_t n, std::size_t i) {
  std::vector<long long> v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("adjacency parts match brute force") {
  for (int m : {3, 4, 5})
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      VertexTable t(m, n);
      const auto ops = GraphOperators::build(t);
      CHECK(oracle::to_dense(ops.adjacency) == oracle::adjacency(t));
      CHECK(oracle::to_dense(ops.outer) == oracle::adjacency(t, oracle::Part::outer));
      CHECK(oracle::to_dense(ops.inner) == oracle::adjacency(t, oracle::Part::inner));
      CHECK(oracle::to_dense(ops.neutral) == oracle::adjacency(t, oracle::Part::neutral));
      CHECK(oracle::to_dense(ops.r1) == oracle::r1(t));
      CHECK(ops.inner == ops.outer.transpose());
      CHECK(ops.adjacency == ops.outer + ops.inner + ops.neutral);
      if (m == 4) CHECK(ops.neutral.is_zero());
      for (const auto& tr : ops.outer.triplets()) CHECK(tr.row > tr.col);
      for (std::size_t i = 0; i < t.size(); ++i) {
        std::size_t deg = 0;
        for (const auto& e : ops.adjacency.row(i)) deg += static_cast<std::size_t>(e.value);
        CHECK(deg == static_cast<std::size_t>(2 * n));
      }
    }
}

TEST_CASE("small adjacency examples") {
  VertexTable tri(3, 1);
  CHECK(oracle::to_dense(adjacency(tri)) == oracle::Dense{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  VertexTable sq(4, 1);
  const auto a = oracle::to_dense(adjacency(sq));
  // 4-cycle: A^2 has trace 8 and A^3 trace 0, A^4 trace 32, consistent with {2, 0, 0, -2}.
  const auto a2 = oracle::mul(a, a);
  const auto a4 = oracle::mul(a2, a2);
  long long tr2 = 0, tr4 = 0, tr3 = 0;
  const auto a3 = oracle::mul(a2, a);
  for (std::size_t i = 0; i < 4; ++i) tr2 += a2[i][i], tr3 += a3[i][i], tr4 += a4[i][i];
  CHECK(tr2 == 8);
  CHECK(tr3 == 0);
  CHECK(tr4 == 32);
  CHECK(oracle::rank(a) == 2);
}

TEST_CASE("outer powers vanish past the last shell (m = 3)") {
  for (int n = 1; n <= 4; ++n) {
    VertexTable t(3, n);
    const auto up = outer_adjacency(t);
    for (int r = 0; r <= n; ++r) {
      IntOperator p = up;
      for (int k = 1; k < n - r + 1; ++k) p = p * up;
      const auto proj = level_projector(t, {r, 0});
      CHECK((p * proj).is_zero());
      if (n - r > 0) {
        IntOperator q = IntOperator::identity(t.size());
        for (int k = 0; k < n - r; ++k) q = q * up;
        CHECK_FALSE((q * proj).is_zero());
      }
    }
  }
}

TEST_CASE("neutral adjacency examples") {
  VertexTable t(3, 2);
  const auto a0 = oracle::to_dense(neutral_adjacency(t));
  const std::size_t v = t.index_of(GroupElement(3, {1, 1}));
  const std::size_t w = t.index_of(GroupElement(3, {-1, 1}));
  CHECK(oracle::apply(a0, delta(t.size(), w))[v] == 1);

  for (int n = 1; n <= 3; ++n) {
    VertexTable u(5, n);
    const auto z = neutral_adjacency(u);
    for (int p = 0; p + 1 <= n; ++p) {
      const auto blk = restrict_block(z, u, {p, 1}, {p, 1});
      CHECK(blk * blk == level_projector(u, {p, 1}));
    }
  }
}

TEST_CASE("subadjacencies") {
  VertexTable t(5, 2);
  const auto o = delta(t.size(), 0);
  const auto up = oracle::to_dense(subadjacency(t, {0, 0}, {1, 0}));
  const auto img = oracle::apply(up, o);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(img[i] == (t.signature(i) == LevelSignature{1, 0} ? 1 : 0));

  const auto lat = oracle::to_dense(subadjacency(t, {1, 0}, {0, 1}));
  const auto img2 = oracle::apply(lat, delta(t.size(), t.index_of(GroupElement(5, {1, 0}))));
  CHECK(img2 == delta(t.size(), t.index_of(GroupElement(5, {2, 0}))));

  for (int n = 1; n <= 3; ++n) {
    VertexTable u(5, n);
    const auto ops = GraphOperators::build(u);
    for (const auto& b : u.blocks()) {
      IntOperator sum(u.size(), u.size());
      const LevelSignature s = b.signature;
      if (is_feasible(5, n, {s.p + 1, s.q})) sum = sum + subadjacency(u, s, {s.p + 1, s.q});
      if (s.p > 0 && is_feasible(5, n, {s.p - 1, s.q + 1}))
        sum = sum + subadjacency(u, s, {s.p - 1, s.q + 1});
      CHECK(sum == ops.outer * level_projector(u, s));
    }
  }
  CHECK_THROWS_AS(subadjacency(t, {0, 0}, {2, 0}), ConfigError);
  CHECK_THROWS_AS(subadjacency(t, {0, 0}, {0, 3}), ConfigError);
}

TEST_CASE("reflections") {
  for (int n = 1; n <= 3; ++n) {
    VertexTable t(5, n);
    const auto ops = GraphOperators::build(t);
    for (int k = 0; k < n; ++k) {
      const auto rho = reflection_op(t, k);
      CHECK(oracle::to_dense(rho) == oracle::reflection(t, static_cast<std::size_t>(k)));
      CHECK(rho * rho == IntOperator::identity(t.size()));
      CHECK(rho * ops.outer == ops.outer * rho);
      CHECK(rho * ops.inner == ops.inner * rho);
    }
    const auto img = oracle::apply(oracle::to_dense(ops.r1), delta(t.size(), 0));
    for (long long x : img) CHECK(x == 0);
  }
}

TEST_CASE("twisted outer adjacency equals the neutral commutator") {
  for (int n = 1; n <= 3; ++n) {
    VertexTable t(5, n);
    const auto a = oracle::adjacency(t);
    const auto a0 = oracle::adjacency(t, oracle::Part::neutral);
    for (const auto& b : t.blocks()) {
      const LevelSignature s = b.signature;
      if (s.p == 0 || !is_feasible(5, n, {s.p - 1, s.q + 1})) {
        if (s.p == 0) CHECK_THROWS_AS(twisted_outer(t, s), ConfigError);
        continue;
      }
      const auto lat = block(a, t.level_set({s.p - 1, s.q + 1}), b.range);
      const auto rhs = columns(oracle::add(oracle::mul(a0, lat), oracle::mul(lat, a0), -1), b.range);
      CHECK(oracle::to_dense(twisted_outer(t, s)) == rhs);
    }
  }
  VertexTable t2(5, 2);
  const auto tw = oracle::to_dense(twisted_outer(t2, {1, 0}));
  const auto img = oracle::apply(tw, delta(t2.size(), t2.index_of(GroupElement(5, {1, 0}))));
  // v = (2,0): one level-two coordinate, v^- = (1,0), reflected to (-1,0).
  CHECK(img[t2.index_of(GroupElement(5, {2, 0}))] == 0);
  CHECK(img[t2.index_of(GroupElement(5, {-2, 0}))] == 1);
  CHECK_THROWS_AS(twisted_outer(VertexTable(4, 2), {1, 0}), ConfigError);
}

TEST_CASE("commutator and coordinate export") {
  VertexTable t(3, 2);
  const auto ops = GraphOperators::build(t);
  const auto c = commutator(ops.inner, ops.outer);
  const auto d = oracle::add(oracle::mul(oracle::to_dense(ops.inner), oracle::to_dense(ops.outer)),
                             oracle::mul(oracle::to_dense(ops.outer), oracle::to_dense(ops.inner)), -1);
  CHECK(oracle::to_dense(c) == d);
  CHECK_THROWS_AS(commutator(ops.inner, IntOperator(3, 3)), ConfigError);
  const std::string s = IntOperator::identity(2).to_coordinate_list();
  CHECK(s == "0 0 1\n1 1 1\n");
}
