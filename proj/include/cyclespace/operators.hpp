#pragma once

// Adjacency operator of C_m^N and its pieces, as exact integer matrices over
// the ordering of a VertexTable.
//
//   A   = A_+ + A_- + A_0
//   A_+ : outer adjacency, maps functions on distance r to distance r + 1
//   A_- : inner adjacency, the transpose of A_+
//   A_0 : neutral adjacency between equal-distance neighbours (zero for m = 4)

#include "cyclespace/group.hpp"
#include "cyclespace/int_operator.hpp"

namespace cyclespace {

IntOperator adjacency(const VertexTable& table);

/// Entry (v, w) = 1 iff v ~ w and d(v) = d(w) + 1. Lower triangular in table order.
IntOperator outer_adjacency(const VertexTable& table);
IntOperator inner_adjacency(const VertexTable& table);
IntOperator neutral_adjacency(const VertexTable& table);

/// Block of A from Sigma_from to Sigma_to. `to` must be one of
/// (p+1,q), (p-1,q+1), (p-1,q), (p+1,q-1) or (p,q).
IntOperator subadjacency(const VertexTable& table, LevelSignature from, LevelSignature to);
/// Same, cut from an already assembled adjacency operator.
IntOperator subadjacency(const IntOperator& a, const VertexTable& table, LevelSignature from,
                         LevelSignature to);

/// (rho_k f)(v) = f(reflect(v, k)).
IntOperator reflection_op(const VertexTable& table, int k);

/// (R_1 f)(v) = sum over level-one coordinates k of f(reflect(v, k)).
IntOperator r1_op(const VertexTable& table);

/// Twisted outer adjacency on C_5^N, from Sigma_{p,q} to Sigma_{p-1,q+1}:
/// (T f)(v) = sum over level-two coordinates nu of v of f(reflect(v_nu^-, nu)).
IntOperator twisted_outer(const VertexTable& table, LevelSignature from);

/// Diagonal 0/1 projector onto Sigma_sig.
IntOperator level_projector(const VertexTable& table, LevelSignature sig);

/// Restriction X_{to <- from}: the (Sigma_to, Sigma_from) block of X.
IntOperator restrict_block(const IntOperator& x, const VertexTable& table, LevelSignature to,
                           LevelSignature from);

/// The operators every identity check and space construction needs, built once.
struct GraphOperators {
  IntOperator adjacency;
  IntOperator outer;
  IntOperator inner;
  IntOperator neutral;
  IntOperator r1;

  static GraphOperators build(const VertexTable& table);
};

}  // namespace cyclespace
