#include "cyclespace/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cyclespace/errors.hpp"

namespace cyclespace {

namespace {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / i;
  return result;
}

void check_modulus(int m) {
  if (!is_supported_modulus(m))
    throw ConfigError("unsupported modulus " + std::to_string(m) + " (expected 3, 4 or 5)");
}

void check_coordinate(const GroupElement& v, int k) {
  if (k < 0 || k >= v.dimension())
    throw ConfigError("coordinate index " + std::to_string(k) + " out of range");
}

GroupElement shifted(const GroupElement& v, int k, int step) {
  std::vector<int> c(v.coords().begin(), v.coords().end());
  c[k] = signed_residue(v.modulus(), static_cast<long long>(c[k]) + step);
  return GroupElement(v.modulus(), std::move(c));
}

}  // namespace

std::string LevelSignature::to_string() const {
  return "Sigma_{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

bool is_supported_modulus(int m) { return m >= 3 && m <= 5; }

int max_level(int m) { return m / 2; }

int signed_residue(int m, long long value) {
  long long r = value % m;
  if (r < 0) r += m;
  // Representatives run from -floor((m-1)/2) to floor(m/2).
  if (r > m / 2) r -= m;
  return static_cast<int>(r);
}

GroupElement::GroupElement(int m, std::vector<int> coords) : m_(m), coords_(std::move(coords)) {
  check_modulus(m);
  if (coords_.empty()) throw ConfigError("group element needs at least one coordinate");
  const int lo = -((m - 1) / 2);
  const int hi = m / 2;
  for (int c : coords_)
    if (c < lo || c > hi)
      throw ConfigError("coordinate " + std::to_string(c) + " outside signed range for m=" +
                        std::to_string(m));
}

GroupElement GroupElement::origin(int m, int dimension) {
  return GroupElement(m, std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

int GroupElement::level(int k) const { return std::abs(coord(k)); }

std::size_t GroupElement::lexicographic_code() const {
  std::size_t code = 0;
  for (int c : coords_) code = code * static_cast<std::size_t>(m_) + static_cast<std::size_t>((c + m_) % m_);
  return code;
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

int path_distance(const GroupElement& v) {
  int d = 0;
  for (int c : v.coords()) d += std::abs(c);
  return d;
}

LevelSignature level_signature(const GroupElement& v) {
  LevelSignature sig;
  for (int c : v.coords()) {
    if (std::abs(c) == 1) ++sig.p;
    if (std::abs(c) == 2) ++sig.q;
  }
  return sig;
}

bool same_level_vector(const GroupElement& v, const GroupElement& w) {
  if (v.modulus() != w.modulus() || v.dimension() != w.dimension()) return false;
  for (int k = 0; k < v.dimension(); ++k)
    if (v.level(k) != w.level(k)) return false;
  return true;
}

std::vector<GroupElement> neighbors(const GroupElement& v) {
  std::vector<GroupElement> out;
  out.reserve(2 * static_cast<std::size_t>(v.dimension()));
  for (int k = 0; k < v.dimension(); ++k) {
    out.push_back(shifted(v, k, +1));
    out.push_back(shifted(v, k, -1));
  }
  return out;
}

std::vector<GroupElement> raise(const GroupElement& v, int k) {
  check_coordinate(v, k);
  const int level = v.level(k);
  if (level >= max_level(v.modulus()))
    throw std::domain_error("coordinate " + std::to_string(k) + " of " + v.to_string() +
                            " is already at the top level");
  if (level == 0) return {shifted(v, k, +1), shifted(v, k, -1)};
  return {shifted(v, k, v.coord(k) > 0 ? +1 : -1)};
}

std::vector<GroupElement> lower(const GroupElement& v, int k) {
  check_coordinate(v, k);
  const int level = v.level(k);
  if (level == 0)
    throw std::domain_error("coordinate " + std::to_string(k) + " of " + v.to_string() +
                            " is null");
  if (v.modulus() % 2 == 0 && level == max_level(v.modulus()))
    return {shifted(v, k, -1), shifted(v, k, +1)};
  return {shifted(v, k, v.coord(k) > 0 ? -1 : +1)};
}

GroupElement reflect(const GroupElement& v, int k) {
  check_coordinate(v, k);
  std::vector<int> c(v.coords().begin(), v.coords().end());
  c[k] = signed_residue(v.modulus(), -static_cast<long long>(c[k]));
  return GroupElement(v.modulus(), std::move(c));
}

std::size_t dense_vertex_budget() {
  if (const char* env = std::getenv("CYCLESPACE_MAX_VERTICES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultDenseVertexBudget;
}

bool is_feasible(int m, int dimension, LevelSignature sig) {
  if (!is_supported_modulus(m) || dimension < 1) return false;
  if (sig.p < 0 || sig.q < 0 || sig.p + sig.q > dimension) return false;
  if (m == 3 && sig.q != 0) return false;
  return true;
}

std::vector<LevelSignature> feasible_signatures(int m, int dimension) {
  check_modulus(m);
  std::vector<LevelSignature> out;
  const int max_q = (m == 3) ? 0 : dimension;
  for (int q = 0; q <= max_q; ++q)
    for (int p = 0; p + q <= dimension; ++p) out.push_back({p, q});
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t level_set_cardinality(int m, int dimension, LevelSignature sig) {
  if (!is_feasible(m, dimension, sig))
    throw ConfigError("infeasible level signature " + sig.to_string());
  const int signed_coords = (m == 4) ? sig.p : sig.p + sig.q;
  return binomial(dimension, sig.q) * binomial(dimension - sig.q, sig.p) *
         (std::uint64_t{1} << signed_coords);
}

VertexTable::VertexTable(int m, int dimension, std::size_t max_vertices) : m_(m), n_(dimension) {
  check_modulus(m);
  if (dimension < 1) throw ConfigError("dimension must be at least 1");
  std::size_t count = 1;
  for (int i = 0; i < dimension; ++i) {
    if (count > max_vertices / static_cast<std::size_t>(m))
      throw BudgetExceeded("C_" + std::to_string(m) + "^" + std::to_string(dimension) +
                           " exceeds the vertex budget of " + std::to_string(max_vertices));
    count *= static_cast<std::size_t>(m);
  }

  std::vector<GroupElement> all;
  all.reserve(count);
  std::vector<int> c(static_cast<std::size_t>(dimension));
  for (std::size_t code = 0; code < count; ++code) {
    std::size_t rest = code;
    for (int k = dimension - 1; k >= 0; --k) {
      c[k] = signed_residue(m, static_cast<long long>(rest % m));
      rest /= m;
    }
    all.emplace_back(m, c);
  }
  std::vector<std::pair<LevelSignature, std::size_t>> keyed;
  keyed.reserve(count);
  for (std::size_t i = 0; i < count; ++i) keyed.emplace_back(level_signature(all[i]), i);
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return all[a.second] < all[b.second];
  });

  elements_.reserve(count);
  distances_.reserve(count);
  block_of_.reserve(count);
  code_to_index_.assign(count, 0);
  for (const auto& [sig, original] : keyed) {
    if (blocks_.empty() || blocks_.back().signature != sig)
      blocks_.push_back({sig, {elements_.size(), elements_.size()}});
    blocks_.back().range.end = elements_.size() + 1;
    code_to_index_[all[original].lexicographic_code()] = elements_.size();
    distances_.push_back(sig.distance());
    block_of_.push_back(blocks_.size() - 1);
    elements_.push_back(std::move(all[original]));
  }
}

std::size_t VertexTable::index_of(const GroupElement& v) const {
  if (v.modulus() != m_ || v.dimension() != n_)
    throw ConfigError("element " + v.to_string() + " does not belong to this table");
  return code_to_index_[v.lexicographic_code()];
}

IndexRange VertexTable::level_set(LevelSignature sig) const {
  for (const auto& b : blocks_)
    if (b.signature == sig) return b.range;
  throw ConfigError("infeasible level signature " + sig.to_string() + " for C_" +
                    std::to_string(m_) + "^" + std::to_string(n_));
}

IndexRange VertexTable::ball(int radius) const {
  std::size_t end = 0;
  for (const auto& b : blocks_)
    if (b.signature.distance() <= radius) end = b.range.end;
  return {0, end};
}

VertexTable enumerate_vertices(int m, int dimension, std::size_t max_vertices) {
  return VertexTable(m, dimension, max_vertices);
}

}  // namespace cyclespace
