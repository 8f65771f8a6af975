#pragma once

// Graph Fourier transform on C_m^N: the N-fold Kronecker power of the unitary
// size-m DFT, with rows (frequencies) and columns (vertices) both permuted
// into vertex-table order.

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

#include "cyclespace/group.hpp"
#include "cyclespace/int_operator.hpp"

namespace cyclespace {

using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Entry (k, j) = exp(sign * 2 pi i j k / m) / sqrt(m), j, k in 0..m-1.
ComplexMatrix dft_matrix(int m, int sign = -1);

struct FrequencyEntry {
  std::size_t index = 0;
  double adjacency_eigenvalue = 0;
  double laplacian_eigenvalue = 0;
};

struct FourierBasis {
  int m = 0;
  int dimension = 0;
  int sign = -1;
  /// Row k, column v: frequency k of the table, vertex v of the table.
  ComplexMatrix f;
  /// Adjacency eigenvalue sum_i 2 cos(2 pi k_i / m) per frequency, table order.
  std::vector<FrequencyEntry> eigencatalog;
};

/// Throws BudgetExceeded when the table exceeds `max_vertices`.
FourierBasis gft(const VertexTable& table, int sign = -1,
                 std::size_t max_vertices = dense_vertex_budget());

RealMatrix to_dense(const IntOperator& x);

/// max |F F* - I|.
double unitarity_error(const FourierBasis& basis);
/// max |F X F* - diag(values)|.
double diagonalization_error(const FourierBasis& basis, const IntOperator& x,
                             const std::vector<double>& values);
std::vector<double> adjacency_eigenvalues(const FourierBasis& basis);
std::vector<double> laplacian_eigenvalues(const FourierBasis& basis);

/// index,coordinates,adjacency_eigenvalue,laplacian_eigenvalue
std::string eigencatalog_csv(const FourierBasis& basis, const VertexTable& table,
                             bool one_based = false);

/// Fixed 12-significant-digit rendering used by every text export.
std::string format_real(double x);

}  // namespace cyclespace
