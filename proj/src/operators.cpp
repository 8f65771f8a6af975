#include "cyclespace/operators.hpp"

#include "cyclespace/errors.hpp"

namespace cyclespace {

namespace {

enum class Direction { kOuter, kInner, kNeutral, kAll };

IntOperator distance_filtered(const VertexTable& table, Direction dir) {
  const std::size_t n = table.size();
  IntOperator out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const int dv = table.distance(i);
    for (const auto& w : neighbors(table.at(i))) {
      const std::size_t j = table.index_of(w);
      const int dw = table.distance(j);
      const bool keep = dir == Direction::kAll || (dir == Direction::kOuter && dv == dw + 1) ||
                        (dir == Direction::kInner && dw == dv + 1) ||
                        (dir == Direction::kNeutral && dv == dw);
      if (keep) out.add(i, j, 1);
    }
  }
  return out;
}

bool is_subadjacency_target(LevelSignature from, LevelSignature to) {
  const int dp = to.p - from.p;
  const int dq = to.q - from.q;
  return (dp == 1 && dq == 0) || (dp == -1 && dq == 1) || (dp == -1 && dq == 0) ||
         (dp == 1 && dq == -1) || (dp == 0 && dq == 0);
}

}  // namespace

IntOperator adjacency(const VertexTable& table) {
  return distance_filtered(table, Direction::kAll);
}

IntOperator outer_adjacency(const VertexTable& table) {
  return distance_filtered(table, Direction::kOuter);
}

IntOperator inner_adjacency(const VertexTable& table) {
  return distance_filtered(table, Direction::kInner);
}

IntOperator neutral_adjacency(const VertexTable& table) {
  return distance_filtered(table, Direction::kNeutral);
}

IntOperator level_projector(const VertexTable& table, LevelSignature sig) {
  return IntOperator::projector(table.size(), table.level_set(sig));
}

IntOperator restrict_block(const IntOperator& x, const VertexTable& table, LevelSignature to,
                           LevelSignature from) {
  IntOperator out = x.block(table.level_set(to), table.level_set(from));
  out.domain_support = std::vector<LevelSignature>{from};
  out.codomain_support = std::vector<LevelSignature>{to};
  return out;
}

IntOperator subadjacency(const VertexTable& table, LevelSignature from, LevelSignature to) {
  return subadjacency(adjacency(table), table, from, to);
}

IntOperator subadjacency(const IntOperator& a, const VertexTable& table, LevelSignature from,
                         LevelSignature to) {
  const int m = table.modulus();
  const int n = table.dimension();
  if (!is_feasible(m, n, from) || !is_feasible(m, n, to))
    throw ConfigError("infeasible subadjacency " + from.to_string() + " -> " + to.to_string());
  if (!is_subadjacency_target(from, to))
    throw ConfigError(to.to_string() + " is not adjacent to " + from.to_string());
  return restrict_block(a, table, to, from);
}

IntOperator reflection_op(const VertexTable& table, int k) {
  if (k < 0 || k >= table.dimension()) throw ConfigError("reflection coordinate out of range");
  IntOperator out(table.size(), table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    out.add(i, table.index_of(reflect(table.at(i), k)), 1);
  return out;
}

IntOperator r1_op(const VertexTable& table) {
  IntOperator out(table.size(), table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& v = table.at(i);
    for (int k = 0; k < v.dimension(); ++k)
      if (v.level(k) == 1) out.add(i, table.index_of(reflect(v, k)), 1);
  }
  return out;
}

IntOperator twisted_outer(const VertexTable& table, LevelSignature from) {
  if (table.modulus() != 5) throw ConfigError("twisted outer adjacency is defined for m = 5");
  const LevelSignature to{from.p - 1, from.q + 1};
  if (!is_feasible(5, table.dimension(), from) || !is_feasible(5, table.dimension(), to))
    throw ConfigError("twisted outer adjacency needs a level-one coordinate in " +
                      from.to_string());
  const IndexRange rows = table.level_set(to);
  IntOperator out(table.size(), table.size());
  for (std::size_t i = rows.begin; i < rows.end; ++i) {
    const auto& v = table.at(i);
    for (int nu = 0; nu < v.dimension(); ++nu) {
      if (v.level(nu) != 2) continue;
      for (const auto& w : lower(v, nu)) out.add(i, table.index_of(reflect(w, nu)), 1);
    }
  }
  out.domain_support = std::vector<LevelSignature>{from};
  out.codomain_support = std::vector<LevelSignature>{to};
  return out;
}

GraphOperators GraphOperators::build(const VertexTable& table) {
  GraphOperators ops;
  ops.adjacency = cyclespace::adjacency(table);
  ops.outer = outer_adjacency(table);
  ops.inner = ops.outer.transpose();
  ops.neutral = neutral_adjacency(table);
  ops.r1 = r1_op(table);
  return ops;
}

}  // namespace cyclespace
