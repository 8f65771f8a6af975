#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "cyclespace/errors.hpp"
#include "cyclespace/group.hpp"
#include "cyclespace/invariant_spaces.hpp"
#include "cyclespace/operators.hpp"
#include "cyclespace/spectral.hpp"
#include "cyclespace/ssl.hpp"
#include "cyclespace/theorems.hpp"

namespace py = pybind11;
namespace cs = cyclespace;

namespace {

Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> dense_int(const cs::IntOperator& x) {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          static_cast<Eigen::Index>(x.rows()), static_cast<Eigen::Index>(x.cols()));
  for (const auto& t : x.triplets())
    out(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) = t.value;
  return out;
}

cs::IntOperator named_operator(const cs::VertexTable& t, const std::string& name) {
  const auto ops = cs::GraphOperators::build(t);
  if (name == "adjacency") return ops.adjacency;
  if (name == "outer") return ops.outer;
  if (name == "inner") return ops.inner;
  if (name == "neutral") return ops.neutral;
  if (name == "r1") return ops.r1;
  if (name == "commutator") return cs::inner_outer_commutator(ops);
  throw cs::ConfigError("unknown operator " + name);
}

cs::RealMatrix basis_matrix(const cs::SubspaceBasis& b, std::size_t n) {
  cs::RealMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(b.dimension()));
  for (std::size_t j = 0; j < b.dimension(); ++j)
    for (std::size_t i = 0; i < n; ++i)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = b.vectors[j][i].get_d();
  return out;
}

py::dict space_dict(const cs::VertexTable& t, const cs::GraphOperators& ops,
                    const cs::SpaceParams& params) {
  const auto w = cs::build_W(t, ops, params);
  const auto v = cs::build_V(t, ops, w);
  py::dict d;
  d["label"] = params.to_string();
  d["base"] = py::make_tuple(params.base.p, params.base.q);
  d["lambda"] = params.lambda ? py::cast(*params.lambda) : py::none();
  d["mu"] = params.mu ? py::cast(*params.mu) : py::none();
  d["W"] = basis_matrix(w, t.size());
  d["V"] = basis_matrix(v, t.size());
  d["V_history"] = v.history;
  d["invariant"] = cs::verify_invariance(v, ops.adjacency);
  return d;
}

}  // namespace

PYBIND11_MODULE(_cyclespace, mod) {
  mod.doc() = "Products of short cycles C_m^N";

  py::register_exception<cs::ConfigError>(mod, "ConfigError", PyExc_ValueError);
  py::register_exception<cs::BudgetExceeded>(mod, "BudgetExceeded", PyExc_MemoryError);
  py::register_exception<cs::NumericalFailure>(mod, "NumericalFailure", PyExc_ArithmeticError);

  py::class_<cs::VertexTable, std::shared_ptr<cs::VertexTable>>(mod, "VertexTable")
      .def(py::init([](int m, int n) { return std::make_shared<cs::VertexTable>(m, n); }),
           py::arg("m"), py::arg("N"))
      .def_property_readonly("m", &cs::VertexTable::modulus)
      .def_property_readonly("N", &cs::VertexTable::dimension)
      .def("__len__", &cs::VertexTable::size)
      .def("vertex",
           [](const cs::VertexTable& t, std::size_t i) {
             const auto c = t.at(i).coords();
             return std::vector<int>(c.begin(), c.end());
           })
      .def("index_of",
           [](const cs::VertexTable& t, std::vector<int> coords) {
             return t.index_of(cs::GroupElement(t.modulus(), std::move(coords)));
           })
      .def("distance", &cs::VertexTable::distance)
      .def("levels", [](const cs::VertexTable& t) {
        py::list out;
        for (const auto& b : t.blocks())
          out.append(py::make_tuple(b.signature.p, b.signature.q, b.range.begin, b.range.end));
        return out;
      });

  mod.def(
      "operator",
      [](const cs::VertexTable& t, const std::string& name) {
        return dense_int(named_operator(t, name));
      },
      py::arg("table"), py::arg("name") = "adjacency",
      "Dense integer matrix of adjacency, outer, inner, neutral, r1 or commutator.");

  mod.def(
      "verify",
      [](int m, int n, int max_distance) {
        const cs::VertexTable t(m, n);
        py::list out;
        for (const auto& c : cs::verify_all(t, {max_distance})) {
          py::dict d;
          d["identity"] = c.identity;
          d["scope"] = c.scope;
          d["passed"] = c.passed;
          d["informational"] = c.informational;
          d["residual_nnz"] = c.residual_nnz;
          d["residual_max"] = c.residual_max;
          out.append(d);
        }
        return out;
      },
      py::arg("m"), py::arg("N"), py::arg("max_distance") = -1);

  mod.def(
      "spaces",
      [](int m, int n, int max_distance) {
        const cs::VertexTable t(m, n);
        const auto ops = cs::GraphOperators::build(t);
        py::list out;
        for (const auto& params : cs::enumerate_space_params(t, ops))
          if (max_distance < 0 || params.base.distance() <= max_distance)
            out.append(space_dict(t, ops, params));
        return out;
      },
      py::arg("m"), py::arg("N"), py::arg("max_distance") = -1,
      "W and V bases (columns, table order) for every space parameter tuple.");

  mod.def("multiplier_sequence",
          [](int m, int n, int r, int lambda) { return cs::multiplier_sequence(m, n, r, lambda).values; },
          py::arg("m"), py::arg("N"), py::arg("r"), py::arg("lambda_") = 0);

  mod.def(
      "level_matrix",
      [](int m, int n, int r, int lambda) {
        const auto l = cs::level_matrix(m, n, r, lambda);
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> out(l.size, l.size);
        for (int i = 0; i < l.size; ++i)
          for (int j = 0; j < l.size; ++j) out(i, j) = l.at(i, j);
        return out;
      },
      py::arg("m"), py::arg("N"), py::arg("r"), py::arg("lambda_") = 0);

  mod.def(
      "gft",
      [](const cs::VertexTable& t, int sign) {
        const auto fb = cs::gft(t, sign);
        return py::make_tuple(fb.f, cs::adjacency_eigenvalues(fb), cs::laplacian_eigenvalues(fb));
      },
      py::arg("table"), py::arg("sign") = -1,
      "(F, adjacency eigenvalues, Laplacian eigenvalues) in table order.");

  mod.def(
      "ssl",
      [](int m, int n, int k, int sign, double cluster_tol, double zero_tol, bool one_based) {
        cs::SslConfig cfg;
        cfg.m = m;
        cfg.dimension = n;
        cfg.radius = k;
        cfg.sign = sign;
        cfg.tol.cluster = cluster_tol;
        cfg.tol.zero = zero_tol;
        cfg.validate();
        const cs::VertexTable t(m, n);
        const auto r = cs::run_ssl(t, cfg);
        py::dict d;
        d["spectrum"] = r.spectrum;
        d["vectors"] = r.vectors;
        d["nonzero"] = r.nonzero;
        py::list classes;
        for (const auto& c : r.classes) {
          py::dict x;
          x["base"] = py::make_tuple(c.base.p, c.base.q);
          x["r1"] = c.r1 ? py::cast(*c.r1) : py::none();
          x["dimension"] = c.dimension;
          x["multiplicity"] = c.multiplicity;
          classes.append(x);
        }
        d["classes"] = classes;
        d["table"] = cs::class_table_text(r, one_based);
        d["csv"] = cs::spectrum_csv(r, one_based);
        d["json"] = cs::report_json(r, one_based);
        d["fig3"] = cs::fig3_text(r, one_based);
        d["fig4"] = cs::fig4_text(r, one_based);
        d["fig5"] = cs::fig5_text(r, t, one_based);
        d["unitarity_error"] = r.unitarity_error;
        d["diagonalization_error"] = r.diagonalization_error;
        d["idempotence_error"] = r.idempotence_error;
        d["route_discrepancy"] = r.route_discrepancy;
        return d;
      },
      py::arg("m") = 5, py::arg("N") = 4, py::arg("K") = 3, py::arg("sign") = -1,
      py::arg("cluster_tol") = 1e-8, py::arg("zero_tol") = 1e-9, py::arg("one_based") = true);
}
