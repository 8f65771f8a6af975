#pragma once

// Vertices of the product-of-cycles graph C_m^N (the Cayley graph of Z_m^N
// with generators +-e_k), written in signed coordinates, together with the
// distance-ordered vertex table that every operator and vector is indexed by.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cyclespace {

/// Number of coordinates at level one (p) and at level two (q).
/// For m = 3 only p is meaningful and q is always zero.
struct LevelSignature {
  int p = 0;
  int q = 0;

  int distance() const { return p + 2 * q; }

  /// Table order: by distance, then by number of level-two coordinates.
  friend std::strong_ordering operator<=>(const LevelSignature& a,
                                          const LevelSignature& b) {
    if (auto c = a.distance() <=> b.distance(); c != 0) return c;
    return a.q <=> b.q;
  }
  friend bool operator==(const LevelSignature&, const LevelSignature&) = default;

  std::string to_string() const;
};

/// Half-open range of vertex indices.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t i) const { return i >= begin && i < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

bool is_supported_modulus(int m);

/// Largest level floor(m/2).
int max_level(int m);

/// Maps any integer to its signed representative in
/// {-floor((m-1)/2), ..., floor(m/2)}.
int signed_residue(int m, long long value);

class GroupElement {
 public:
  GroupElement(int m, std::vector<int> coords);

  static GroupElement origin(int m, int dimension);

  int modulus() const { return m_; }
  int dimension() const { return static_cast<int>(coords_.size()); }
  std::span<const int> coords() const { return coords_; }
  int coord(int k) const { return coords_.at(static_cast<std::size_t>(k)); }
  /// d_k(v) = |l_k|.
  int level(int k) const;

  /// Position in lexicographic order of the unsigned residues, i.e. the
  /// row index of this element in the plain Kronecker-power ordering.
  std::size_t lexicographic_code() const;

  std::string to_string() const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
    return a.coords_ <=> b.coords_;
  }

 private:
  int m_;
  std::vector<int> coords_;
};

int path_distance(const GroupElement& v);
LevelSignature level_signature(const GroupElement& v);

/// True when both vertices have the same level in every coordinate.
bool same_level_vector(const GroupElement& v, const GroupElement& w);

/// The 2N vertices v +- e_k.
std::vector<GroupElement> neighbors(const GroupElement& v);

/// v_k^+. One vertex when d_k(v) > 0, the pair v +- e_k when d_k(v) = 0.
/// Throws std::domain_error when coordinate k is already at the top level.
std::vector<GroupElement> raise(const GroupElement& v, int k);

/// v_k^-. One vertex, except for even m at the top level where both
/// v - e_k and v + e_k are one level lower.
/// Throws std::domain_error when coordinate k is null.
std::vector<GroupElement> lower(const GroupElement& v, int k);

/// k-reflection: negates coordinate k.
GroupElement reflect(const GroupElement& v, int k);

/// Default vertex budget for dense spectral work.
inline constexpr std::size_t kDefaultDenseVertexBudget = 100'000;
/// Ceiling for graph-only vertex tables.
inline constexpr std::size_t kDefaultTableVertexBudget = 20'000'000;

/// Dense budget, honouring the CYCLESPACE_MAX_VERTICES environment variable.
std::size_t dense_vertex_budget();

/// All level signatures that occur in C_m^N, in table order.
std::vector<LevelSignature> feasible_signatures(int m, int dimension);

bool is_feasible(int m, int dimension, LevelSignature sig);

/// Closed-form |Sigma_{p,q}| = C(N,q) C(N-q,p) 2^{p+q}, with 2^p for m = 4
/// level-two coordinates (2 = -2 there).
std::uint64_t level_set_cardinality(int m, int dimension, LevelSignature sig);

/// Immutable ordered vertex set: increasing distance, then increasing number
/// of level-two coordinates, then lexicographic signed coordinates.
class VertexTable {
 public:
  struct Block {
    LevelSignature signature;
    IndexRange range;
  };

  VertexTable(int m, int dimension,
              std::size_t max_vertices = kDefaultTableVertexBudget);

  int modulus() const { return m_; }
  int dimension() const { return n_; }
  std::size_t size() const { return elements_.size(); }

  const GroupElement& at(std::size_t index) const { return elements_.at(index); }
  std::size_t index_of(const GroupElement& v) const;
  std::size_t index_of_code(std::size_t lexicographic_code) const {
    return code_to_index_[lexicographic_code];
  }

  int distance(std::size_t index) const { return distances_[index]; }
  LevelSignature signature(std::size_t index) const {
    return blocks_[block_of_[index]].signature;
  }
  std::size_t block_index(std::size_t index) const { return block_of_[index]; }

  std::span<const Block> blocks() const { return blocks_; }
  /// Contiguous index range of Sigma_{p,q}. Throws std::invalid_argument
  /// for infeasible signatures.
  IndexRange level_set(LevelSignature sig) const;
  /// Indices with distance at most `radius`.
  IndexRange ball(int radius) const;

 private:
  int m_;
  int n_;
  std::vector<GroupElement> elements_;
  std::vector<int> distances_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> code_to_index_;
  std::vector<Block> blocks_;
};

VertexTable enumerate_vertices(int m, int dimension,
                               std::size_t max_vertices = kDefaultTableVertexBudget);

}  // namespace cyclespace
