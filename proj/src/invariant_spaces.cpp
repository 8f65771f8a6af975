#include "cyclespace/invariant_spaces.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>

#include <json.hpp>

#include "cyclespace/errors.hpp"

namespace cyclespace {

namespace {

RationalVector scaled(const RationalVector& v, const Rational& s) {
  RationalVector out(v);
  for (auto& x : out) x *= s;
  return out;
}

void add_to(RationalVector& acc, const RationalVector& v, const Rational& s = 1) {
  for (std::size_t i = 0; i < acc.size(); ++i)
    if (v[i] != 0) acc[i] += s * v[i];
}

RationalVector embed(const RationalVector& local, IndexRange range, std::size_t n) {
  RationalVector out(n, Rational(0));
  for (std::size_t i = 0; i < local.size(); ++i) out[range.begin + i] = local[i];
  return out;
}

// Rows of X restricted to the columns of `cols`, skipping rows that vanish there.
void append_rows(std::vector<RationalVector>& rows, const IntOperator& x, IndexRange row_range,
                 IndexRange cols, int shift = 0) {
  for (std::size_t i = row_range.begin; i < row_range.end; ++i) {
    RationalVector row(cols.size(), Rational(0));
    bool any = false;
    for (const auto& e : x.row(i))
      if (cols.contains(e.col)) {
        row[e.col - cols.begin] = Rational(static_cast<long>(e.value));
        any = true;
      }
    if (shift != 0 && cols.contains(i)) {
      row[i - cols.begin] -= shift;
      any = true;
    }
    if (any) rows.push_back(std::move(row));
  }
}

std::vector<RationalVector> block_eigenspace(const IntOperator& x, const VertexTable& table,
                                             LevelSignature sig, int eigenvalue) {
  const IndexRange range = table.level_set(sig);
  std::vector<RationalVector> rows;
  append_rows(rows, x, range, range, eigenvalue);
  return exact_nullspace(rows, range.size());
}

std::string signature_pair(LevelSignature s) {
  return "(" + std::to_string(s.p) + "," + std::to_string(s.q) + ")";
}

void require_modulus(const VertexTable& table, std::initializer_list<int> allowed,
                     const char* what) {
  if (std::find(allowed.begin(), allowed.end(), table.modulus()) == allowed.end())
    throw ConfigError(std::string(what) + " is not defined for m = " +
                      std::to_string(table.modulus()));
}

}  // namespace

std::string SpaceParams::to_string() const {
  std::string out = base.to_string();
  if (lambda) out += " lambda=" + std::to_string(*lambda);
  if (mu) out += " mu=" + std::to_string(*mu);
  return out;
}

std::vector<LevelSignature> SubspaceBasis::support(const VertexTable& table) const {
  std::vector<bool> hit(table.blocks().size(), false);
  for (const auto& v : vectors)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) hit[table.block_index(i)] = true;
  std::vector<LevelSignature> out;
  for (std::size_t b = 0; b < hit.size(); ++b)
    if (hit[b]) out.push_back(table.blocks()[b].signature);
  return out;
}

MultiplierSequence multiplier_sequence(int m, int dimension, int r, int lambda) {
  if (m != 3 && m != 4)
    throw ConfigError("multiplier sequences are defined for m = 3 and m = 4 only");
  if (r < 0 || r > dimension) throw ConfigError("r must lie in [0, N]");
  MultiplierSequence seq{m, dimension, r, m == 3 ? lambda : 0, {}};
  const int size = level_matrix_size(m, dimension, r);
  std::int64_t value = 0;
  for (int k = 0; k < size; ++k) {
    if (m == 3)
      value = k == 0 ? 2 * dimension - 3 * r - lambda
                     : value + (2 * dimension - 3 * r - 4 * k) - lambda;
    else
      value = k == 0 ? 2 * (dimension - r) : value + 2 * (dimension - (r + k));
    seq.values.push_back(value);
  }
  return seq;
}

std::int64_t LevelMatrix::at(int i, int j) const {
  if (i < 0 || j < 0 || i >= size || j >= size) throw ConfigError("level matrix index out of range");
  if (i == j) return diag[i];
  if (i == j + 1) return sub[j];
  if (j == i + 1) return super[i];
  return 0;
}

std::vector<Rational> LevelMatrix::apply(std::span<const Rational> c) const {
  if (static_cast<int>(c.size()) != size) throw ConfigError("coefficient vector has the wrong size");
  std::vector<Rational> out(size, Rational(0));
  for (int i = 0; i < size; ++i) {
    out[i] += Rational(static_cast<long>(diag[i])) * c[i];
    if (i + 1 < size) {
      out[i] += Rational(static_cast<long>(super[i])) * c[i + 1];
      out[i + 1] += Rational(static_cast<long>(sub[i])) * c[i];
    }
  }
  return out;
}

int level_matrix_size(int m, int dimension, int r) {
  if (m == 3) return dimension + 1 - r;
  if (m == 4) return 2 * (dimension - r) + 1;
  throw ConfigError("level matrices are defined for m = 3 and m = 4 only");
}

LevelMatrix level_matrix(int m, int dimension, int r, int lambda) {
  const MultiplierSequence seq = multiplier_sequence(m, dimension, r, lambda);
  LevelMatrix l;
  l.size = level_matrix_size(m, dimension, r);
  for (int k = 0; k < l.size; ++k) {
    l.diag.push_back(m == 3 ? lambda + k : 0);
    if (k + 1 < l.size) {
      l.sub.push_back(1);
      l.super.push_back(seq.values[k]);
    }
  }
  return l;
}

SubspaceBasis hadamard_eigenbasis(const VertexTable& table, std::span<const int> support_coords,
                                  int s) {
  require_modulus(table, {3}, "the Hadamard eigenbasis");
  const int r = static_cast<int>(support_coords.size());
  std::vector<int> coords(support_coords.begin(), support_coords.end());
  std::sort(coords.begin(), coords.end());
  if (std::adjacent_find(coords.begin(), coords.end()) != coords.end() ||
      (!coords.empty() && (coords.front() < 0 || coords.back() >= table.dimension())))
    throw ConfigError("invalid support coordinate set");
  if (s < 0 || s > r) throw ConfigError("symmetric count must lie in [0, r]");

  SubspaceBasis out;
  out.m = 3;
  out.dimension_n = table.dimension();
  out.kind = "hadamard";
  out.params = {LevelSignature{r, 0}, 2 * s - r, std::nullopt};

  const IndexRange range = table.level_set(LevelSignature{r, 0});
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (std::popcount(mask) != s) continue;
    RationalVector v(table.size(), Rational(0));
    for (std::size_t i = range.begin; i < range.end; ++i) {
      const auto& x = table.at(i);
      bool on_support = true;
      for (int j = 0; j < r && on_support; ++j) on_support = x.coord(coords[j]) != 0;
      if (!on_support) continue;
      int value = 1;
      for (int j = 0; j < r; ++j)
        if (!(mask & (1u << j))) value *= x.coord(coords[j]);
      v[i] = value;
    }
    std::string label = "sym{";
    for (int j = 0; j < r; ++j)
      if (mask & (1u << j)) label += std::to_string(coords[j]) + ",";
    if (label.back() == ',') label.pop_back();
    out.vectors.push_back(std::move(v));
    out.history.push_back(label + "}");
  }
  return out;
}

std::vector<std::pair<int, std::size_t>> integer_block_spectrum(const IntOperator& x,
                                                                const VertexTable& table,
                                                                LevelSignature sig) {
  const IndexRange range = table.level_set(sig);
  std::int64_t bound = 0;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    std::int64_t row = 0;
    for (const auto& e : x.row(i))
      if (range.contains(e.col)) row += std::abs(e.value);
    bound = std::max(bound, row);
  }
  std::vector<std::pair<int, std::size_t>> out;
  std::size_t total = 0;
  for (int l = static_cast<int>(-bound); l <= bound; ++l) {
    const std::size_t d = block_eigenspace(x, table, sig, l).size();
    if (d > 0) out.emplace_back(l, d);
    total += d;
  }
  if (total != range.size())
    throw NumericalFailure("operator block on " + sig.to_string() +
                           " is not diagonalizable with integer eigenvalues");
  return out;
}

std::vector<SpaceParams> enumerate_space_params(const VertexTable& table,
                                                const GraphOperators& ops) {
  std::vector<SpaceParams> out;
  const int n = table.dimension();
  switch (table.modulus()) {
    case 3:
      for (int r = 0; r <= n; ++r)
        for (int s = 0; s <= r; ++s) out.push_back({LevelSignature{r, 0}, 2 * s - r, std::nullopt});
      break;
    case 4:
      for (const auto& b : table.blocks()) out.push_back({b.signature, std::nullopt, std::nullopt});
      break;
    case 5:
      for (const auto& b : table.blocks()) {
        const auto r1 = integer_block_spectrum(ops.r1, table, b.signature);
        const auto a0 = integer_block_spectrum(ops.neutral, table, b.signature);
        for (const auto& [l, dl] : r1)
          for (const auto& [u, du] : a0) out.push_back({b.signature, l, u});
      }
      break;
    default:
      throw ConfigError("unsupported modulus");
  }
  return out;
}

SubspaceBasis build_W(const VertexTable& table, const GraphOperators& ops,
                      const SpaceParams& params) {
  const int m = table.modulus();
  if (!is_feasible(m, table.dimension(), params.base))
    throw ConfigError("infeasible base level " + params.base.to_string());
  if (m == 3 && !params.lambda) throw ConfigError("m = 3 needs an A0 eigenvalue");
  if (m == 5 && (!params.lambda || !params.mu))
    throw ConfigError("m = 5 needs an R1 eigenvalue and an A0 eigenvalue");

  const IndexRange block = table.level_set(params.base);
  std::vector<RationalVector> rows;
  append_rows(rows, ops.inner, IndexRange{0, table.size()}, block);
  if (m == 3) append_rows(rows, ops.neutral, block, block, *params.lambda);
  if (m == 5) {
    append_rows(rows, ops.r1, block, block, *params.lambda);
    append_rows(rows, ops.neutral, block, block, *params.mu);
  }

  SubspaceBasis w;
  w.m = m;
  w.dimension_n = table.dimension();
  w.kind = "W";
  w.params = params;
  std::size_t j = 0;
  for (auto& local : exact_nullspace(rows, block.size())) {
    w.vectors.push_back(embed(local, block, table.size()));
    w.history.push_back("w" + std::to_string(j++));
  }
  return w;
}

SubspaceBasis build_V(const VertexTable& table, const GraphOperators& ops, const SubspaceBasis& w,
                      ClosureStats* stats) {
  SubspaceBasis v;
  v.m = w.m;
  v.dimension_n = w.dimension_n;
  v.kind = "V";
  v.params = w.params;
  ClosureStats local_stats;

  if (w.m == 3 || w.m == 4) {
    const int cap = level_matrix_size(w.m, w.dimension_n, w.params.base.distance());
    for (std::size_t j = 0; j < w.vectors.size(); ++j) {
      RationalVector x = w.vectors[j];
      for (int k = 0; k < cap && !is_zero(x); ++k) {
        v.vectors.push_back(x);
        v.history.push_back((k == 0 ? std::string() : "A+^" + std::to_string(k) + " ") +
                            w.history[j]);
        x = cyclespace::apply(ops.outer, x);
        ++local_stats.images_tried;
      }
      ++local_stats.iterations;
    }
    local_stats.signatures_reached = v.support(table).size();
    if (stats) *stats = local_stats;
    return v;
  }

  require_modulus(table, {5}, "closure");
  const int n = table.dimension();
  const int max_distance = table.modulus() * n;
  std::map<std::pair<int, int>, IntOperator> ups;
  auto up_op = [&](LevelSignature from, LevelSignature to) -> const IntOperator& {
    const auto key = std::make_pair(from.p * 64 + from.q, to.p * 64 + to.q);
    auto it = ups.find(key);
    if (it == ups.end()) it = ups.emplace(key, subadjacency(ops.adjacency, table, from, to)).first;
    return it->second;
  };

  std::map<std::size_t, EchelonBasis> per_block;
  struct Item {
    RationalVector vec;
    LevelSignature sig;
    std::string word;
  };
  std::deque<Item> queue;
  auto offer = [&](RationalVector x, LevelSignature sig, std::string word) {
    ++local_stats.images_tried;
    if (is_zero(x) || sig.distance() > max_distance) return;
    const IndexRange range = table.level_set(sig);
    auto [it, inserted] = per_block.try_emplace(range.begin, table.size());
    if (!it->second.add(x)) return;
    x = to_dense(primitive_row(x), table.size());
    v.vectors.push_back(x);
    v.history.push_back(word);
    queue.push_back({std::move(x), sig, std::move(word)});
  };

  for (std::size_t j = 0; j < w.vectors.size(); ++j)
    offer(w.vectors[j], w.params.base, w.history[j]);
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    ++local_stats.iterations;
    const LevelSignature s = item.sig;
    offer(cyclespace::apply(ops.neutral, item.vec), s, "A0 " + item.word);
    for (LevelSignature to : {LevelSignature{s.p + 1, s.q}, LevelSignature{s.p - 1, s.q + 1}}) {
      if (to.p < 0 || !is_feasible(5, n, to)) continue;
      offer(cyclespace::apply(up_op(s, to), item.vec), to,
            "A" + signature_pair(s) + "->" + signature_pair(to) + " " + item.word);
    }
  }
  local_stats.signatures_reached = per_block.size();
  if (stats) *stats = local_stats;
  return v;
}

bool verify_invariance(const SubspaceBasis& basis, const IntOperator& a) {
  if (basis.vectors.empty()) return true;
  const std::size_t n = basis.vectors.front().size();
  EchelonBasis span(n);
  for (const auto& v : basis.vectors) span.add(v);
  for (const auto& v : basis.vectors)
    if (!span.contains(cyclespace::apply(a, v))) return false;
  return true;
}

LevelMatrixCheck check_level_matrix(const VertexTable& table, const GraphOperators& ops,
                                    const SubspaceBasis& w) {
  require_modulus(table, {3, 4}, "the level matrix");
  const int r = w.params.base.distance();
  const int lambda = w.m == 3 ? w.params.lambda.value_or(0) : 0;
  const LevelMatrix l = level_matrix(w.m, w.dimension_n, r, lambda);
  LevelMatrixCheck check;
  for (const auto& f : w.vectors) {
    ++check.chains;
    std::vector<RationalVector> powers{f};
    for (int k = 0; k < l.size; ++k) powers.push_back(cyclespace::apply(ops.outer, powers.back()));
    if (!is_zero(powers[l.size])) check.chain_terminates = false;
    std::size_t live = 0;
    while (live < powers.size() && !is_zero(powers[live])) ++live;
    for (std::size_t k = live; k < powers.size(); ++k)
      if (!is_zero(powers[k])) check.chain_terminates = false;

    for (int k = 0; k < l.size; ++k) {
      const RationalVector image = cyclespace::apply(ops.adjacency, powers[k]);
      RationalVector predicted = scaled(powers[k], Rational(static_cast<long>(l.diag[k])));
      if (k + 1 < l.size) add_to(predicted, powers[k + 1], Rational(static_cast<long>(l.sub[k])));
      if (k > 0) add_to(predicted, powers[k - 1], Rational(static_cast<long>(l.super[k - 1])));
      if (image != predicted) check.vector_identity = false;

      if (static_cast<std::size_t>(k) >= live) continue;
      const std::vector<RationalVector> chain(powers.begin(),
                                              powers.begin() + static_cast<long>(live));
      const auto coords = coordinates_in(chain, image);
      if (!coords) {
        check.coordinates = false;
        continue;
      }
      for (std::size_t j = 0; j < live; ++j)
        if ((*coords)[j] != Rational(static_cast<long>(l.at(static_cast<int>(j), k))))
          check.coordinates = false;
    }
  }
  return check;
}

MultiplierCheck check_multipliers(const VertexTable& table, const GraphOperators& ops,
                                  const SubspaceBasis& w) {
  require_modulus(table, {3, 4}, "the multiplier recursion");
  const int r = w.params.base.distance();
  const MultiplierSequence seq =
      multiplier_sequence(w.m, w.dimension_n, r, w.m == 3 ? w.params.lambda.value_or(0) : 0);
  MultiplierCheck check;
  for (const auto& f : w.vectors) {
    RationalVector power = f;
    for (std::size_t k = 0; k < seq.values.size(); ++k) {
      const RationalVector next = cyclespace::apply(ops.outer, power);
      const RationalVector lhs = cyclespace::apply(ops.inner, next);
      const RationalVector rhs = scaled(power, Rational(static_cast<long>(seq.values[k])));
      ++check.identities;
      if (lhs != rhs) ++check.failures;
      power = next;
    }
  }
  return check;
}

EigenShiftReport eigen_shift_check(const VertexTable& table, const GraphOperators& ops) {
  require_modulus(table, {3, 5}, "the eigen-shift check");
  EigenShiftReport report;
  const int n = table.dimension();
  auto is_eigen = [](const IntOperator& x, const RationalVector& g, int value) {
    return cyclespace::apply(x, g) == scaled(g, Rational(value));
  };

  if (table.modulus() == 3) {
    for (int r = 0; r < n; ++r) {
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != r) continue;
        std::vector<int> coords;
        for (int k = 0; k < n; ++k)
          if (mask & (1u << k)) coords.push_back(k);
        for (int s = 0; s <= r; ++s) {
          for (const auto& f : hadamard_eigenbasis(table, coords, s).vectors) {
            const RationalVector g = cyclespace::apply(ops.outer, f);
            if (is_zero(g)) {
              ++report.skipped_zero;
              continue;
            }
            ++report.checked;
            if (is_eigen(ops.neutral, g, 2 * s - r + 1)) ++report.passed;
          }
        }
      }
    }
    return report;
  }

  for (const auto& b : table.blocks()) {
    const LevelSignature s = b.signature;
    const LevelSignature outward{s.p + 1, s.q};
    const LevelSignature lateral{s.p - 1, s.q + 1};
    const bool has_out = is_feasible(5, n, outward);
    const bool has_lat = s.p >= 1 && is_feasible(5, n, lateral);
    if (!has_out && !has_lat) continue;
    for (const auto& [lambda, dim] : integer_block_spectrum(ops.r1, table, s)) {
      for (const auto& local : block_eigenspace(ops.r1, table, s, lambda)) {
        const RationalVector f = embed(local, b.range, table.size());
        if (has_out) {
          const RationalVector g = cyclespace::apply(subadjacency(ops.adjacency, table, s, outward), f);
          if (is_zero(g)) {
            ++report.skipped_zero;
          } else {
            ++report.checked;
            if (is_eigen(ops.r1, g, lambda + 1)) ++report.passed;
          }
        }
        if (has_lat) {
          const RationalVector g = cyclespace::apply(subadjacency(ops.adjacency, table, s, lateral), f);
          if (!is_zero(g)) {
            ++report.lateral_checked;
            if (is_eigen(ops.r1, g, lambda)) ++report.lateral_passed;
          }
        }
      }
    }
  }
  return report;
}

std::string to_json(const SubspaceBasis& basis, bool one_based, int indent) {
  using nlohmann::json;
  json meta = {{"m", basis.m},
               {"N", basis.dimension_n},
               {"kind", basis.kind},
               {"base", {{"p", basis.params.base.p}, {"q", basis.params.base.q}}},
               {"dimension", basis.dimension()}};
  meta["lambda"] = basis.params.lambda ? json(*basis.params.lambda) : json(nullptr);
  meta["mu"] = basis.params.mu ? json(*basis.params.mu) : json(nullptr);
  meta["index_base"] = one_based ? 1 : 0;

  auto integer = [](const Integer& z) -> json {
    if (z.fits_slong_p()) return json(z.get_si());
    return json(z.get_str());
  };
  json vectors = json::array();
  for (const auto& v : basis.vectors) {
    json entries = json::array();
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0)
        entries.push_back({i + (one_based ? 1 : 0), integer(v[i].get_num()), integer(v[i].get_den())});
    vectors.push_back(std::move(entries));
  }
  json doc = {{"meta", meta}, {"vectors", vectors}, {"history", basis.history}};
  return doc.dump(indent);
}

}  // namespace cyclespace
