#pragma once

// Spatio-spectral limiting on C_m^N. Q keeps vertices with d(v) <= K, the
// spectral truncation is P = F^{-1} Q F, and the eigen-decomposition of PQ is
// taken through the Hermitian compressions QPQ and FPQF^{-1} on range(Q).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclespace/group.hpp"
#include "cyclespace/invariant_spaces.hpp"
#include "cyclespace/operators.hpp"
#include "cyclespace/spectral.hpp"

namespace cyclespace {

struct Tolerances {
  double cluster = 1e-8;
  /// Relative to the norm of the cluster basis.
  double zero = 1e-9;
  double r1_residual = 1e-6;
  double linkage = 1e-8;
  double level_constant = 1e-8;
  double unitarity = 1e-12;
  double diagonalization = 1e-10;
  double projection = 1e-10;
  double spectrum = 1e-10;
  double route_agreement = 1e-8;
};

struct SslConfig {
  int m = 5;
  int dimension = 4;
  int radius = 3;
  int sign = -1;
  Tolerances tol;

  /// Throws ConfigError for an unsupported modulus, N < 1 or K outside [0, N floor(m/2)].
  void validate() const;
};

/// Diagonal 0/1 projector onto {v : d(v) <= K}.
IntOperator spatial_projection(const VertexTable& table, int radius);
/// P = F^{-1} Q F.
ComplexMatrix spectral_projection(const FourierBasis& basis, const IntOperator& q);

struct Cluster {
  std::size_t begin = 0;
  std::size_t end = 0;
  double value = 0;
  LevelSignature base;
  std::optional<int> r1;
  bool ambiguous = false;
  double r1_residual = 0;
  std::size_t base_rank = 0;

  std::size_t size() const { return end - begin; }
};

struct SslClass {
  LevelSignature base;
  std::optional<int> r1;
  std::size_t dimension = 0;
  std::size_t multiplicity = 0;
  std::vector<std::size_t> clusters;
};

struct SslReport {
  SslConfig config;
  std::size_t vertices = 0;
  IndexRange ball;
  /// Eigenvalues of QPQ on range(Q), descending.
  std::vector<double> spectrum;
  /// Eigenvectors of F P Q F^{-1} on range(Q), columns in spectrum order,
  /// rows indexed by the ball (frequency side, table order).
  RealMatrix vectors;
  /// Eigenvectors of QPQ on range(Q), same layout (vertex side).
  RealMatrix vertex_vectors;
  /// Squared singular values of the full PQ, descending.
  std::vector<double> svd_spectrum;
  double route_discrepancy = 0;
  double svd_tail = 0;
  double trace_qpq = 0;
  double trace_p = 0;
  double idempotence_error = 0;
  double hermitian_error = 0;
  double unitarity_error = 0;
  double diagonalization_error = 0;
  std::size_t nonzero = 0;
  std::vector<Cluster> clusters;
  std::vector<SslClass> classes;

  double spectrum_min() const;
  double spectrum_max() const;
};

/// Builds F, Q, P and the two decompositions. Throws BudgetExceeded when the
/// vertex count exceeds the dense budget and NumericalFailure when an
/// invariant that must hold exactly in exact arithmetic is violated badly.
SslReport decompose(const VertexTable& table, const SslConfig& config);

/// Groups the spectrum into clusters and classifies each by base level and
/// R_1 eigenvalue. With `rotate_seed`, every cluster basis is first rotated by
/// a random orthogonal matrix.
void classify(SslReport& report, const VertexTable& table, const GraphOperators& ops,
              std::optional<std::uint64_t> rotate_seed = std::nullopt);

/// Largest relative deviation from a constant on any level block, over the
/// given columns (rows indexed like SslReport::vectors).
double level_constant_deviation(const VertexTable& table, const RealMatrix& columns);

struct LevelVectorCheck {
  bool passed = false;
  std::size_t vectors = 0;
  double max_deviation = 0;
};

/// Every eigenvector in a class based at Sigma_{0,0} is constant on each level block.
LevelVectorCheck level_vector_check(const SslReport& report, const VertexTable& table);

struct LinkagePiece {
  std::string space;
  std::size_t dimension = 0;
};

struct ClusterLinkage {
  std::size_t cluster = 0;
  std::vector<LinkagePiece> pieces;
  std::size_t spanned = 0;
  double residual = 0;
  /// Informational: the V with the cluster's own base and R_1 label contributes.
  bool own_space_hit = false;
  bool passed = false;
};

struct LinkageReport {
  std::vector<ClusterLinkage> clusters;
  std::size_t spaces = 0;
  bool passed() const;
};

/// Each cluster must be the direct sum of its intersections with invariant
/// spaces V rooted at distance <= its base distance, so that it has an
/// eigenbasis whose members each lie in a single V. Whether the V labelled by
/// the cluster's own base and R_1 value takes part is recorded separately.
LinkageReport check_linkage(const SslReport& report, const VertexTable& table,
                            const GraphOperators& ops);

/// decompose followed by classify.
SslReport run_ssl(const VertexTable& table, const SslConfig& config);

std::string class_label(const SslClass& c);
/// Base | Dim (#) | R1 | Indices, one row per class.
std::string class_table_text(const SslReport& report, bool one_based = true);
/// index,value,base_p,base_q,r1,class_id
std::string spectrum_csv(const SslReport& report, bool one_based = false);
std::string report_json(const SslReport& report, bool one_based = false);
/// index vs eigenvalue.
std::string fig3_text(const SslReport& report, bool one_based = true);
/// Real parts of base-Sigma_{0,0} eigenvectors against vertex index.
std::string fig4_text(const SslReport& report, bool one_based = true);
/// One representative per class, values sorted within each level set.
std::string fig5_text(const SslReport& report, const VertexTable& table, bool one_based = true);

}  // namespace cyclespace
