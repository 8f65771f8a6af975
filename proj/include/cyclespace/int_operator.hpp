#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cyclespace/group.hpp"

namespace cyclespace {

/// Sparse integer matrix acting on vertex functions: (Xf)(i) = sum_j X(i,j) f(j).
/// Rows are kept sorted by column and never store explicit zeros.
class IntOperator {
 public:
  using Value = std::int64_t;
  struct Entry {
    std::size_t col;
    Value value;
  };
  struct Triplet {
    std::size_t row;
    std::size_t col;
    Value value;
    friend bool operator==(const Triplet&, const Triplet&) = default;
  };

  IntOperator() = default;
  IntOperator(std::size_t rows, std::size_t cols);

  static IntOperator identity(std::size_t n);
  /// Diagonal 0/1 projector onto an index range.
  static IntOperator projector(std::size_t n, IndexRange range);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool is_zero() const { return nnz() == 0; }

  Value at(std::size_t i, std::size_t j) const;
  std::span<const Entry> row(std::size_t i) const { return rows_.at(i); }
  /// Adds `value` to entry (i, j).
  void add(std::size_t i, std::size_t j, Value value);

  IntOperator transpose() const;
  /// P_rows X P_cols: keeps only the (rows, cols) block, same shape.
  IntOperator block(IndexRange row_range, IndexRange col_range) const;
  /// Largest absolute entry (0 for the zero operator).
  Value max_abs() const;

  std::vector<Triplet> triplets() const;
  /// `i j value` lines, row-major sorted.
  std::string to_coordinate_list() const;

  /// Level signatures the operator reads from / writes to, when declared.
  std::optional<std::vector<LevelSignature>> domain_support;
  std::optional<std::vector<LevelSignature>> codomain_support;

  template <class T>
  std::vector<T> apply(std::span<const T> x) const {
    std::vector<T> y(rows(), T(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      for (const auto& e : rows_[i])
        if (x[e.col] != 0) y[i] += x[e.col] * T(e.value);
    return y;
  }
  template <class T>
  std::vector<T> apply(const std::vector<T>& x) const {
    return apply(std::span<const T>(x));
  }

  friend IntOperator operator*(const IntOperator& a, const IntOperator& b);
  friend IntOperator operator+(const IntOperator& a, const IntOperator& b);
  friend IntOperator operator-(const IntOperator& a, const IntOperator& b);
  friend IntOperator operator*(Value s, const IntOperator& a);
  friend bool operator==(const IntOperator& a, const IntOperator& b);

 private:
  std::vector<std::vector<Entry>> rows_;
  std::size_t cols_ = 0;
};

/// XY - YX in exact integer arithmetic. Throws ConfigError on shape mismatch.
IntOperator commutator(const IntOperator& x, const IntOperator& y);

struct CommutatorReport {
  IntOperator lhs;
  IntOperator rhs;
  IntOperator residual;
  bool is_exact_match = false;
};

CommutatorReport compare(IntOperator lhs, IntOperator rhs);

}  // namespace cyclespace
