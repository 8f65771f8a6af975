#include "cyclespace/ssl.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cyclespace/errors.hpp"

namespace cyclespace {

namespace {

double max_abs(const ComplexMatrix& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }
double max_abs(const RealMatrix& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

// Descending eigen-decomposition of a real symmetric matrix, each eigenvector
// signed so that its largest entry (first on ties) is positive.
void sorted_eigen(const RealMatrix& h, std::vector<double>& values, RealMatrix& vectors) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalFailure("symmetric eigensolver did not converge");
  const Eigen::Index n = h.rows();
  values.assign(static_cast<std::size_t>(n), 0.0);
  vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values[static_cast<std::size_t>(k)] = es.eigenvalues()(n - 1 - k);
    vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index arg = 0;
    double best = -1;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(vectors(i, k)) > best + 1e-12) {
        best = std::abs(vectors(i, k));
        arg = i;
      }
    if (vectors(arg, k) < 0) vectors.col(k) *= -1.0;
  }
}

RealMatrix real_part_checked(const ComplexMatrix& x, const char* what) {
  if (max_abs(RealMatrix(x.imag())) > 1e-10)
    throw NumericalFailure(std::string(what) + " is not real; the truncation ball is not symmetric");
  return x.real();
}

RealMatrix orthonormal_columns(const RealMatrix& x, double relative_tol) {
  if (x.cols() == 0) return RealMatrix(x.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(x, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  const double cut = relative_tol * (s.size() ? s(0) : 0.0);
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

RealMatrix to_dense(const SubspaceBasis& basis, std::size_t n) {
  RealMatrix out = RealMatrix::Zero(static_cast<Eigen::Index>(n),
                                    static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t j = 0; j < basis.dimension(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (basis.vectors[j][i] != 0)
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis.vectors[j][i].get_d();
  return out;
}

RealMatrix random_rotation(Eigen::Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  RealMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  return qr.householderQ() * RealMatrix::Identity(d, d);
}

std::string r1_text(const std::optional<int>& r1) {
  return r1 ? std::to_string(*r1) : std::string("?");
}

std::string range_text(std::size_t begin, std::size_t end, bool one_based) {
  const std::size_t o = one_based ? 1 : 0;
  if (end - begin == 1) return std::to_string(begin + o);
  return std::to_string(begin + o) + "-" + std::to_string(end - 1 + o);
}

double rounded(double x) { return std::stod(format_real(x)); }

}  // namespace

void SslConfig::validate() const {
  if (!is_supported_modulus(m)) throw ConfigError("unsupported modulus m=" + std::to_string(m));
  if (dimension < 1) throw ConfigError("N must be at least 1");
  const int k_max = dimension * max_level(m);
  if (radius < 0 || radius > k_max)
    throw ConfigError("K=" + std::to_string(radius) + " outside [0, " + std::to_string(k_max) + "]");
  if (sign != 1 && sign != -1) throw ConfigError("transform sign must be +1 or -1");
}

IntOperator spatial_projection(const VertexTable& table, int radius) {
  return IntOperator::projector(table.size(), table.ball(radius));
}

ComplexMatrix spectral_projection(const FourierBasis& basis, const IntOperator& q) {
  ComplexMatrix qf = ComplexMatrix::Zero(basis.f.rows(), basis.f.cols());
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (const auto& e : q.row(i))
      qf.row(static_cast<Eigen::Index>(i)) +=
          static_cast<double>(e.value) * basis.f.row(static_cast<Eigen::Index>(e.col));
  return basis.f.adjoint() * qf;
}

double SslReport::spectrum_min() const {
  return spectrum.empty() ? 0.0 : *std::min_element(spectrum.begin(), spectrum.end());
}

double SslReport::spectrum_max() const {
  return spectrum.empty() ? 0.0 : *std::max_element(spectrum.begin(), spectrum.end());
}

SslReport decompose(const VertexTable& table, const SslConfig& config) {
  config.validate();
  if (table.modulus() != config.m || table.dimension() != config.dimension)
    throw ConfigError("vertex table does not match the configuration");
  const std::size_t budget = dense_vertex_budget();
  if (table.size() > budget)
    throw BudgetExceeded("spatio-spectral limiting needs " + std::to_string(table.size()) +
                         " vertices; budget is " + std::to_string(budget));

  SslReport report;
  report.config = config;
  report.vertices = table.size();
  report.ball = table.ball(config.radius);

  const FourierBasis fb = gft(table, config.sign, budget);
  report.unitarity_error = unitarity_error(fb);
  report.diagonalization_error =
      diagonalization_error(fb, adjacency(table), adjacency_eigenvalues(fb));

  const IntOperator q = spatial_projection(table, config.radius);
  const ComplexMatrix p = spectral_projection(fb, q);
  report.idempotence_error = max_abs(ComplexMatrix(p * p - p));
  report.hermitian_error = max_abs(ComplexMatrix(p - p.adjoint()));
  report.trace_p = p.trace().real();

  const auto nb = static_cast<Eigen::Index>(report.ball.size());
  const ComplexMatrix g = fb.f.topLeftCorner(nb, nb);
  const RealMatrix freq_side = real_part_checked(g * g.adjoint(), "F P Q F^-1 on range(Q)");
  const RealMatrix vertex_side = real_part_checked(g.adjoint() * g, "QPQ on range(Q)");
  report.trace_qpq = vertex_side.trace();

  sorted_eigen(freq_side, report.spectrum, report.vectors);
  std::vector<double> vertex_values;
  sorted_eigen(vertex_side, vertex_values, report.vertex_vectors);

  // Singular values of PQ itself: P with the columns outside the ball removed.
  ComplexMatrix pq = ComplexMatrix::Zero(p.rows(), p.cols());
  pq.leftCols(nb) = p.leftCols(nb);
  Eigen::BDCSVD<ComplexMatrix> svd(pq);
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    report.svd_spectrum.push_back(svd.singularValues()(k) * svd.singularValues()(k));

  for (std::size_t k = 0; k < report.spectrum.size(); ++k) {
    report.route_discrepancy =
        std::max({report.route_discrepancy, std::abs(report.spectrum[k] - report.svd_spectrum[k]),
                  std::abs(report.spectrum[k] - vertex_values[k])});
    if (report.spectrum[k] > config.tol.cluster) ++report.nonzero;
  }
  for (std::size_t k = report.spectrum.size(); k < report.svd_spectrum.size(); ++k)
    report.svd_tail = std::max(report.svd_tail, report.svd_spectrum[k]);
  return report;
}

void classify(SslReport& report, const VertexTable& table, const GraphOperators& ops,
              std::optional<std::uint64_t> rotate_seed) {
  const Tolerances& tol = report.config.tol;
  report.clusters.clear();
  report.classes.clear();
  std::optional<std::mt19937_64> rng;
  if (rotate_seed) rng.emplace(*rotate_seed);

  const RealMatrix r1 = to_dense(ops.r1);
  const std::size_t nb = report.spectrum.size();
  for (std::size_t i = 0; i < nb;) {
    std::size_t j = i + 1;
    while (j < nb && std::abs(report.spectrum[j] - report.spectrum[i]) < tol.cluster) ++j;
    Cluster c;
    c.begin = i;
    c.end = j;
    c.value = report.spectrum[i];

    const auto d = static_cast<Eigen::Index>(j - i);
    RealMatrix x = report.vectors.middleCols(static_cast<Eigen::Index>(i), d);
    if (rng) x = x * random_rotation(d, *rng);
    if (rotate_seed) report.vectors.middleCols(static_cast<Eigen::Index>(i), d) = x;

    const double threshold = tol.zero * std::sqrt(static_cast<double>(d));
    std::optional<VertexTable::Block> base;
    for (const auto& b : table.blocks()) {
      if (b.range.begin >= nb) break;
      const auto rows = x.middleRows(static_cast<Eigen::Index>(b.range.begin),
                                     static_cast<Eigen::Index>(b.range.size()));
      if (rows.norm() > threshold) {
        base = b;
        break;
      }
    }
    if (!base) throw NumericalFailure("eigenvector cluster vanishes on the truncation ball");
    c.base = base->signature;

    const auto b0 = static_cast<Eigen::Index>(base->range.begin);
    const auto bw = static_cast<Eigen::Index>(base->range.size());
    const RealMatrix z = orthonormal_columns(x.middleRows(b0, bw), 1e-8);
    const RealMatrix r = r1.block(b0, b0, bw, bw);
    const RealMatrix h = z.transpose() * r * z;
    c.base_rank = static_cast<std::size_t>(z.cols());
    c.r1_residual = max_abs(RealMatrix(r * z - z * h));
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (h + h.transpose()));
    const double guess = std::round(es.eigenvalues().mean());
    bool integral = c.r1_residual < tol.r1_residual;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
      integral = integral && std::abs(es.eigenvalues()(k) - guess) < tol.r1_residual;
    if (integral)
      c.r1 = static_cast<int>(guess);
    else
      c.ambiguous = true;
    report.clusters.push_back(c);
    i = j;
  }

  for (std::size_t k = 0; k < report.clusters.size(); ++k) {
    const Cluster& c = report.clusters[k];
    auto it = std::find_if(report.classes.begin(), report.classes.end(), [&](const SslClass& s) {
      return s.base == c.base && s.r1 == c.r1 && s.dimension == c.size();
    });
    if (it == report.classes.end()) {
      report.classes.push_back({c.base, c.r1, c.size(), 0, {}});
      it = std::prev(report.classes.end());
    }
    ++it->multiplicity;
    it->clusters.push_back(k);
  }
  std::stable_sort(report.classes.begin(), report.classes.end(),
                   [](const SslClass& a, const SslClass& b) {
                     if (a.base != b.base) return a.base < b.base;
                     if (a.r1 != b.r1) return a.r1 < b.r1;
                     return a.dimension < b.dimension;
                   });
}

double level_constant_deviation(const VertexTable& table, const RealMatrix& columns) {
  double worst = 0;
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    const double scale = std::max(columns.col(c).cwiseAbs().maxCoeff(), 1e-300);
    for (const auto& b : table.blocks()) {
      const auto begin = static_cast<Eigen::Index>(b.range.begin);
      if (begin >= columns.rows()) break;
      const auto len = std::min(static_cast<Eigen::Index>(b.range.size()), columns.rows() - begin);
      const auto seg = columns.col(c).segment(begin, len);
      const double mean = seg.mean();
      worst = std::max(worst, (seg.array() - mean).abs().maxCoeff() / scale);
    }
  }
  return worst;
}

LevelVectorCheck level_vector_check(const SslReport& report, const VertexTable& table) {
  std::vector<Eigen::Index> cols;
  for (const auto& cls : report.classes) {
    if (cls.base != LevelSignature{0, 0}) continue;
    for (std::size_t k : cls.clusters)
      for (std::size_t i = report.clusters[k].begin; i < report.clusters[k].end; ++i)
        cols.push_back(static_cast<Eigen::Index>(i));
  }
  RealMatrix x(report.vectors.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j)
    x.col(static_cast<Eigen::Index>(j)) = report.vectors.col(cols[j]);
  LevelVectorCheck check;
  check.vectors = cols.size();
  check.max_deviation = level_constant_deviation(table, x);
  check.passed = check.vectors > 0 && check.max_deviation < report.config.tol.level_constant;
  return check;
}

bool LinkageReport::passed() const {
  return !clusters.empty() &&
         std::all_of(clusters.begin(), clusters.end(), [](const ClusterLinkage& c) { return c.passed; });
}

LinkageReport check_linkage(const SslReport& report, const VertexTable& table,
                            const GraphOperators& ops) {
  const double tol = report.config.tol.linkage;
  int deepest = 0;
  for (const auto& c : report.clusters) deepest = std::max(deepest, c.base.distance());

  struct Space {
    SpaceParams params;
    RealMatrix basis;
  };
  std::vector<Space> spaces;
  for (const auto& params : enumerate_space_params(table, ops)) {
    if (params.base.distance() > deepest) continue;
    const SubspaceBasis w = build_W(table, ops, params);
    if (w.dimension() == 0) continue;
    const SubspaceBasis v = build_V(table, ops, w);
    spaces.push_back({params, orthonormal_columns(to_dense(v, table.size()), 1e-10)});
  }

  LinkageReport out;
  out.spaces = spaces.size();
  const auto n = static_cast<Eigen::Index>(table.size());
  const auto nb = report.vectors.rows();
  for (std::size_t k = 0; k < report.clusters.size(); ++k) {
    const Cluster& c = report.clusters[k];
    const auto d = static_cast<Eigen::Index>(c.size());
    RealMatrix x = RealMatrix::Zero(n, d);
    x.topRows(nb) = report.vectors.middleCols(static_cast<Eigen::Index>(c.begin), d);

    ClusterLinkage link;
    link.cluster = k;
    RealMatrix pieces(n, 0);
    for (const auto& s : spaces) {
      if (s.params.base.distance() > c.base.distance()) continue;
      const RealMatrix outside = x - s.basis * (s.basis.transpose() * x);
      Eigen::JacobiSVD<RealMatrix> svd(outside, Eigen::ComputeFullV);
      std::vector<Eigen::Index> inside;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) < tol) inside.push_back(i);
      if (inside.empty()) continue;
      RealMatrix dirs(d, static_cast<Eigen::Index>(inside.size()));
      for (std::size_t i = 0; i < inside.size(); ++i)
        dirs.col(static_cast<Eigen::Index>(i)) = svd.matrixV().col(inside[i]);
      RealMatrix grown(n, pieces.cols() + dirs.cols());
      grown << pieces, x * dirs;
      pieces = std::move(grown);
      link.pieces.push_back({s.params.to_string(), inside.size()});
      const bool own = s.params.base == c.base && (!s.params.lambda || s.params.lambda == c.r1);
      if (own) link.own_space_hit = true;
    }
    const RealMatrix span = orthonormal_columns(pieces, 1e-6);
    link.spanned = static_cast<std::size_t>(span.cols());
    link.residual = max_abs(RealMatrix(x - span * (span.transpose() * x)));
    link.passed = link.spanned == c.size() && link.residual < tol;
    out.clusters.push_back(std::move(link));
  }
  return out;
}

SslReport run_ssl(const VertexTable& table, const SslConfig& config) {
  SslReport report = decompose(table, config);
  classify(report, table, GraphOperators::build(table));
  return report;
}

std::string class_label(const SslClass& c) {
  return c.base.to_string() + " dim " + std::to_string(c.dimension) + " (x" +
         std::to_string(c.multiplicity) + ") R1 " + r1_text(c.r1);
}

std::string class_table_text(const SslReport& report, bool one_based) {
  std::ostringstream os;
  os << "base\tdim (#)\tR1\tindices\n";
  std::size_t total = 0;
  for (const auto& c : report.classes) {
    os << c.base.to_string() << '\t' << c.dimension << " (" << c.multiplicity << ")\t"
       << r1_text(c.r1) << '\t';
    for (std::size_t i = 0; i < c.clusters.size(); ++i) {
      const Cluster& cl = report.clusters[c.clusters[i]];
      os << (i ? ", " : "") << range_text(cl.begin, cl.end, one_based);
    }
    os << '\n';
    total += c.dimension * c.multiplicity;
  }
  os << "total\t" << total << '\n';
  return os.str();
}

std::string spectrum_csv(const SslReport& report, bool one_based) {
  std::vector<std::size_t> class_of(report.clusters.size(), 0);
  for (std::size_t c = 0; c < report.classes.size(); ++c)
    for (std::size_t k : report.classes[c].clusters) class_of[k] = c;
  std::ostringstream os;
  os << "index,value,base_p,base_q,r1,class_id\n";
  for (std::size_t k = 0; k < report.clusters.size(); ++k) {
    const Cluster& c = report.clusters[k];
    for (std::size_t i = c.begin; i < c.end; ++i)
      os << i + (one_based ? 1 : 0) << ',' << format_real(report.spectrum[i]) << ',' << c.base.p
         << ',' << c.base.q << ',' << (c.r1 ? std::to_string(*c.r1) : "") << ',' << class_of[k]
         << '\n';
  }
  return os.str();
}

std::string report_json(const SslReport& report, bool one_based) {
  using nlohmann::json;
  const std::size_t o = one_based ? 1 : 0;
  const Tolerances& t = report.config.tol;
  json doc;
  doc["config"] = {{"m", report.config.m},
                   {"N", report.config.dimension},
                   {"K", report.config.radius},
                   {"sign", report.config.sign},
                   {"index_base", o},
                   {"tolerances",
                    {{"cluster", t.cluster},
                     {"zero", t.zero},
                     {"r1_residual", t.r1_residual},
                     {"linkage", t.linkage},
                     {"level_constant", t.level_constant}}}};
  doc["vertices"] = report.vertices;
  doc["ball_size"] = report.ball.size();
  doc["nonzero"] = report.nonzero;
  json diag;
  diag["trace_qpq"] = rounded(report.trace_qpq);
  diag["trace_p"] = rounded(report.trace_p);
  diag["route_discrepancy"] = rounded(report.route_discrepancy);
  diag["svd_tail"] = rounded(report.svd_tail);
  diag["idempotence_error"] = rounded(report.idempotence_error);
  diag["hermitian_error"] = rounded(report.hermitian_error);
  diag["unitarity_error"] = rounded(report.unitarity_error);
  diag["diagonalization_error"] = rounded(report.diagonalization_error);
  doc["diagnostics"] = diag;
  json spectrum = json::array();
  for (double v : report.spectrum) spectrum.push_back(rounded(v));
  doc["spectrum"] = spectrum;
  json clusters = json::array();
  for (const auto& c : report.clusters)
    clusters.push_back({{"first", c.begin + o},
                        {"last", c.end - 1 + o},
                        {"size", c.size()},
                        {"value", rounded(c.value)},
                        {"base", {{"p", c.base.p}, {"q", c.base.q}}},
                        {"r1", c.r1 ? json(*c.r1) : json(nullptr)},
                        {"ambiguous", c.ambiguous},
                        {"base_rank", c.base_rank}});
  doc["clusters"] = clusters;
  json classes = json::array();
  for (const auto& c : report.classes) {
    json members = json::array();
    for (std::size_t k : c.clusters)
      members.push_back({report.clusters[k].begin + o, report.clusters[k].end - 1 + o});
    classes.push_back({{"base", {{"p", c.base.p}, {"q", c.base.q}}},
                       {"r1", c.r1 ? json(*c.r1) : json(nullptr)},
                       {"dimension", c.dimension},
                       {"multiplicity", c.multiplicity},
                       {"members", members}});
  }
  doc["classes"] = classes;
  return doc.dump(2) + "\n";
}

std::string fig3_text(const SslReport& report, bool one_based) {
  std::ostringstream os;
  os << "# index eigenvalue\n";
  for (std::size_t i = 0; i < report.spectrum.size(); ++i)
    os << i + (one_based ? 1 : 0) << ' ' << format_real(report.spectrum[i]) << '\n';
  return os.str();
}

std::string fig4_text(const SslReport& report, bool one_based) {
  std::vector<Eigen::Index> cols;
  for (const auto& cls : report.classes)
    if (cls.base == LevelSignature{0, 0})
      for (std::size_t k : cls.clusters)
        for (std::size_t i = report.clusters[k].begin; i < report.clusters[k].end; ++i)
          cols.push_back(static_cast<Eigen::Index>(i));
  std::sort(cols.begin(), cols.end());
  std::ostringstream os;
  os << "# vertex";
  for (auto c : cols) os << " v" << c + (one_based ? 1 : 0);
  os << '\n';
  for (Eigen::Index i = 0; i < report.vectors.rows(); ++i) {
    os << i + (one_based ? 1 : 0);
    for (auto c : cols) os << ' ' << format_real(report.vectors(i, c));
    os << '\n';
  }
  return os.str();
}

std::string fig5_text(const SslReport& report, const VertexTable& table, bool one_based) {
  const Eigen::Index nb = report.vectors.rows();
  RealMatrix reps(nb, static_cast<Eigen::Index>(report.classes.size()));
  std::ostringstream os;
  os << "# vertex";
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(report.clusters[report.classes[c].clusters.front()].begin);
    reps.col(static_cast<Eigen::Index>(c)) = report.vectors.col(col);
    os << " [" << report.classes[c].base.to_string() << ",dim=" << report.classes[c].dimension
       << ",R1=" << r1_text(report.classes[c].r1) << ']';
  }
  os << '\n';
  for (const auto& b : table.blocks()) {
    const auto begin = static_cast<Eigen::Index>(b.range.begin);
    if (begin >= nb) break;
    const auto len = static_cast<Eigen::Index>(b.range.size());
    for (Eigen::Index c = 0; c < reps.cols(); ++c) {
      std::vector<double> seg(static_cast<std::size_t>(len));
      for (Eigen::Index i = 0; i < len; ++i) seg[static_cast<std::size_t>(i)] = reps(begin + i, c);
      std::sort(seg.begin(), seg.end(), std::greater<>());
      for (Eigen::Index i = 0; i < len; ++i) reps(begin + i, c) = seg[static_cast<std::size_t>(i)];
    }
  }
  for (Eigen::Index i = 0; i < nb; ++i) {
    os << i + (one_based ? 1 : 0);
    for (Eigen::Index c = 0; c < reps.cols(); ++c) os << ' ' << format_real(reps(i, c));
    os << '\n';
  }
  return os.str();
}

}  // namespace cyclespace
