#pragma once

// Adjacency-invariant vertex-function spaces. W is a base space on a single
// level set (annihilated by A_-, eigenvector of the neutral/reflection
// operators); V is what A_+ (and for m = 5, the individual outer
// subadjacencies and A_0) generate from W. All bases are exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclespace/exact.hpp"
#include "cyclespace/group.hpp"
#include "cyclespace/operators.hpp"

namespace cyclespace {

/// m = 3: lambda is the A_0 eigenvalue. m = 4: neither is used.
/// m = 5: lambda is the R_1 eigenvalue and mu the A_0 eigenvalue.
struct SpaceParams {
  LevelSignature base;
  std::optional<int> lambda;
  std::optional<int> mu;

  std::string to_string() const;
};

struct SubspaceBasis {
  int m = 0;
  int dimension_n = 0;
  std::string kind;
  SpaceParams params;
  std::vector<RationalVector> vectors;
  /// How each vector was produced, e.g. "A+^2 w1" or "A(1,0)->(2,0) A0 w0".
  std::vector<std::string> history;

  std::size_t dimension() const { return vectors.size(); }
  /// Level sets on which some basis vector is nonzero, in table order.
  std::vector<LevelSignature> support(const VertexTable& table) const;
};

struct MultiplierSequence {
  int m = 0;
  int dimension = 0;
  int r = 0;
  int lambda = 0;
  /// m(r, k, lambda) for k = 0 .. level_matrix_size - 1.
  std::vector<std::int64_t> values;
};

/// m = 3: m(r,0) = 2N - 3r - lambda, m(r,k) = m(r,k-1) + (2N - 3r - 4k) - lambda.
/// m = 4: m(r,0) = 2(N - r), m(r,k) = m(r,k-1) + 2(N - (r + k)).
/// Throws ConfigError for m = 5 or r outside [0, N].
MultiplierSequence multiplier_sequence(int m, int dimension, int r, int lambda = 0);

struct LevelMatrix {
  int size = 0;
  std::vector<std::int64_t> sub;
  std::vector<std::int64_t> diag;
  std::vector<std::int64_t> super;

  std::int64_t at(int i, int j) const;
  /// L c.
  std::vector<Rational> apply(std::span<const Rational> c) const;
};

/// Size N + 1 - r for m = 3 and 2(N - r) + 1 for m = 4.
int level_matrix_size(int m, int dimension, int r);
LevelMatrix level_matrix(int m, int dimension, int r, int lambda = 0);

/// Columns of the Hadamard matrix on the vertices of C_3^N whose nonzero
/// coordinates are exactly `support_coords`, symmetric in s of them and
/// antisymmetric in the rest. A_0 eigenvectors with eigenvalue 2s - r.
SubspaceBasis hadamard_eigenbasis(const VertexTable& table, std::span<const int> support_coords,
                                  int s);

/// Integer eigenvalues of the (sig, sig) block of X with their eigenspace
/// dimensions. Throws NumericalFailure if the block is not diagonalizable
/// over the integers.
std::vector<std::pair<int, std::size_t>> integer_block_spectrum(const IntOperator& x,
                                                                const VertexTable& table,
                                                                LevelSignature sig);

/// Every parameter tuple whose W is defined for the table's modulus.
std::vector<SpaceParams> enumerate_space_params(const VertexTable& table,
                                                const GraphOperators& ops);

SubspaceBasis build_W(const VertexTable& table, const GraphOperators& ops,
                      const SpaceParams& params);

struct ClosureStats {
  std::size_t iterations = 0;
  std::size_t images_tried = 0;
  std::size_t signatures_reached = 0;
};

/// m = 3, 4: the nonzero powers A_+^k f, f-major. m = 5: block-wise closure
/// of W under both outer subadjacencies and A_0, keeping an image only when
/// it raises the exact rank of its level block.
SubspaceBasis build_V(const VertexTable& table, const GraphOperators& ops, const SubspaceBasis& w,
                      ClosureStats* stats = nullptr);

/// rank [B | A B] == rank B over Q.
bool verify_invariance(const SubspaceBasis& basis, const IntOperator& a);

struct LevelMatrixCheck {
  std::size_t chains = 0;
  /// A v_k = v_{k+1} + diag_k v_k + super_{k-1} v_{k-1} for every chain.
  bool vector_identity = true;
  /// Coordinates of A v_k in the chain basis equal column k of L.
  bool coordinates = true;
  /// The power after the last nonzero chain vector vanishes.
  bool chain_terminates = true;

  bool passed() const { return vector_identity && coordinates && chain_terminates; }
};

/// Requires m in {3, 4} and w built with build_W.
LevelMatrixCheck check_level_matrix(const VertexTable& table, const GraphOperators& ops,
                                    const SubspaceBasis& w);

struct MultiplierCheck {
  std::size_t identities = 0;
  std::size_t failures = 0;
};

/// A_- A_+^{k+1} f = m(r,k) A_+^k f for every basis vector f of w and every k
/// up to the level matrix size.
MultiplierCheck check_multipliers(const VertexTable& table, const GraphOperators& ops,
                                  const SubspaceBasis& w);

struct EigenShiftReport {
  std::size_t checked = 0;
  std::size_t passed = 0;
  std::size_t skipped_zero = 0;
  /// m = 5 only: images under A_{(p,q)->(p-1,q+1)} tested for the unshifted eigenvalue.
  std::size_t lateral_checked = 0;
  std::size_t lateral_passed = 0;

  bool ok() const { return checked == passed; }
};

/// m = 3: A_+ maps Hadamard A_0-eigenvectors with eigenvalue lambda to
/// eigenvectors with eigenvalue lambda + 1. m = 5: A_{(p,q)->(p+1,q)} maps
/// R_1-eigenvectors with eigenvalue lambda to eigenvalue lambda + 1.
EigenShiftReport eigen_shift_check(const VertexTable& table, const GraphOperators& ops);

/// {meta, vectors: [[[index, numerator, denominator], ...], ...], history}.
std::string to_json(const SubspaceBasis& basis, bool one_based = false, int indent = 2);

}  // namespace cyclespace
