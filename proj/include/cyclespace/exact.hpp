#pragma once

// Exact linear algebra over Q for rank, span-membership and nullspace
// questions. Elimination is fraction-free: rows are kept as primitive integer
// vectors and combined by cross-multiplication, then divided by their content.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cyclespace/int_operator.hpp"

namespace cyclespace {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Sparse integer row: (column, value) pairs sorted by column, no zeros.
using SparseIntegerRow = std::vector<std::pair<std::size_t, Integer>>;

/// Scales to integers and divides out the content. The zero vector maps to
/// the empty row.
SparseIntegerRow primitive_row(const RationalVector& v);
RationalVector to_dense(const SparseIntegerRow& row, std::size_t dimension);

RationalVector apply(const IntOperator& op, const RationalVector& v);
bool is_zero(const RationalVector& v);

/// Incrementally built row-echelon basis of a subspace of Q^dimension.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dimension) : dimension_(dimension) {}

  /// Adds v; returns true iff v was independent of the current span.
  bool add(const RationalVector& v);
  bool contains(const RationalVector& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t dimension() const { return dimension_; }
  std::span<const std::size_t> pivots() const { return pivots_; }

 private:
  SparseIntegerRow reduce(SparseIntegerRow v) const;

  std::size_t dimension_;
  std::vector<SparseIntegerRow> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t exact_rank(const std::vector<RationalVector>& vectors, std::size_t dimension);

/// Basis of {x : R x = 0} for the given constraint rows, as primitive
/// integer vectors (denominator one).
std::vector<RationalVector> exact_nullspace(const std::vector<RationalVector>& constraint_rows,
                                            std::size_t dimension);

/// Coefficients c with sum_i c_i basis[i] = target, or nullopt when target is
/// outside the span. Requires linearly independent basis vectors.
std::optional<RationalVector> coordinates_in(const std::vector<RationalVector>& basis,
                                             const RationalVector& target);

}  // namespace cyclespace
