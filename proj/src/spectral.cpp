#include "cyclespace/spectral.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "cyclespace/errors.hpp"

namespace cyclespace {

ComplexMatrix dft_matrix(int m, int sign) {
  if (!is_supported_modulus(m)) throw ConfigError("unsupported modulus " + std::to_string(m));
  if (sign != 1 && sign != -1) throw ConfigError("transform sign must be +1 or -1");
  ComplexMatrix d(m, m);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (int k = 0; k < m; ++k)
    for (int j = 0; j < m; ++j)
      d(k, j) = std::polar(scale, sign * 2.0 * std::numbers::pi * ((j * k) % m) / m);
  return d;
}

FourierBasis gft(const VertexTable& table, int sign, std::size_t max_vertices) {
  if (table.size() > max_vertices)
    throw BudgetExceeded("graph Fourier transform needs " + std::to_string(table.size()) +
                         " vertices; budget is " + std::to_string(max_vertices));
  const int m = table.modulus();
  const ComplexMatrix d = dft_matrix(m, sign);

  ComplexMatrix kron = ComplexMatrix::Ones(1, 1);
  for (int i = 0; i < table.dimension(); ++i) {
    ComplexMatrix next(kron.rows() * m, kron.cols() * m);
    for (Eigen::Index a = 0; a < kron.rows(); ++a)
      for (Eigen::Index b = 0; b < kron.cols(); ++b)
        next.block(a * m, b * m, m, m) = kron(a, b) * d;
    kron = std::move(next);
  }

  FourierBasis basis;
  basis.m = m;
  basis.dimension = table.dimension();
  basis.sign = sign;
  const auto n = static_cast<Eigen::Index>(table.size());
  std::vector<Eigen::Index> code(table.size());
  for (std::size_t i = 0; i < table.size(); ++i)
    code[i] = static_cast<Eigen::Index>(table.at(i).lexicographic_code());
  basis.f.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index v = 0; v < n; ++v) basis.f(k, v) = kron(code[k], code[v]);

  for (std::size_t k = 0; k < table.size(); ++k) {
    double a = 0;
    for (int c : table.at(k).coords()) a += 2.0 * std::cos(2.0 * std::numbers::pi * c / m);
    basis.eigencatalog.push_back({k, a, 2.0 * table.dimension() - a});
  }
  return basis;
}

RealMatrix to_dense(const IntOperator& x) {
  RealMatrix out = RealMatrix::Zero(static_cast<Eigen::Index>(x.rows()),
                                    static_cast<Eigen::Index>(x.cols()));
  for (const auto& t : x.triplets())
    out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) =
        static_cast<double>(t.value);
  return out;
}

double unitarity_error(const FourierBasis& basis) {
  const ComplexMatrix e =
      basis.f * basis.f.adjoint() - ComplexMatrix::Identity(basis.f.rows(), basis.f.cols());
  return e.cwiseAbs().maxCoeff();
}

double diagonalization_error(const FourierBasis& basis, const IntOperator& x,
                             const std::vector<double>& values) {
  ComplexMatrix e = basis.f * to_dense(x).cast<std::complex<double>>() * basis.f.adjoint();
  for (std::size_t k = 0; k < values.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    e(i, i) -= values[k];
  }
  return e.cwiseAbs().maxCoeff();
}

std::vector<double> adjacency_eigenvalues(const FourierBasis& basis) {
  std::vector<double> out;
  for (const auto& e : basis.eigencatalog) out.push_back(e.adjacency_eigenvalue);
  return out;
}

std::vector<double> laplacian_eigenvalues(const FourierBasis& basis) {
  std::vector<double> out;
  for (const auto& e : basis.eigencatalog) out.push_back(e.laplacian_eigenvalue);
  return out;
}

std::string format_real(double x) {
  if (std::abs(x) < 5e-13) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string eigencatalog_csv(const FourierBasis& basis, const VertexTable& table, bool one_based) {
  std::ostringstream os;
  os << "index,coordinates,adjacency_eigenvalue,laplacian_eigenvalue\n";
  for (const auto& e : basis.eigencatalog) {
    os << e.index + (one_based ? 1 : 0) << ",\"" << table.at(e.index).to_string() << "\","
       << format_real(e.adjacency_eigenvalue) << ',' << format_real(e.laplacian_eigenvalue) << '\n';
  }
  return os.str();
}

}  // namespace cyclespace
