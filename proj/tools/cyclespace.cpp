#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cyclespace/errors.hpp"
#include "cyclespace/group.hpp"
#include "cyclespace/invariant_spaces.hpp"
#include "cyclespace/operators.hpp"
#include "cyclespace/spectral.hpp"
#include "cyclespace/ssl.hpp"
#include "cyclespace/theorems.hpp"

namespace cs = cyclespace;

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailure = 1;
constexpr int kBadConfig = 2;
constexpr int kBudget = 3;

struct Common {
  int m = 5;
  int n = 4;
  bool one_based = false;
  std::string format = "text";
  std::string output;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--m", c.m, "cycle length (3, 4 or 5)")->required();
  app->add_option("--N", c.n, "number of cycle factors")->required();
  app->add_flag("--one-based", c.one_based, "report 1-based vertex indices");
  app->add_option("--output,-o", c.output, "write the main output to this file");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.output);
  if (!f) throw cs::ConfigError("cannot open " + c.output);
  f << text;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw cs::ConfigError("cannot open " + path.string());
  f << text;
}

cs::VertexTable make_table(const Common& c) {
  if (!cs::is_supported_modulus(c.m)) throw cs::ConfigError("unsupported modulus m=" + std::to_string(c.m));
  if (c.n < 1) throw cs::ConfigError("N must be at least 1");
  return cs::VertexTable(c.m, c.n, cs::dense_vertex_budget() > cs::kDefaultTableVertexBudget
                                       ? cs::dense_vertex_budget()
                                       : cs::kDefaultTableVertexBudget);
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string range_text(const cs::IndexRange& r, bool one_based) {
  const std::size_t o = one_based ? 1 : 0;
  if (r.end == r.begin) return "-";
  if (r.end - r.begin == 1) return std::to_string(r.begin + o);
  return std::to_string(r.begin + o) + "-" + std::to_string(r.end - 1 + o);
}

int cmd_levels(const Common& c) {
  const cs::VertexTable table = make_table(c);
  std::ostringstream os;
  const std::size_t o = c.one_based ? 1 : 0;
  if (c.format == "csv") {
    os << "p,q,distance,cardinality,first,last\n";
    for (const auto& b : table.blocks())
      os << b.signature.p << ',' << b.signature.q << ',' << b.signature.distance() << ','
         << b.range.size() << ',' << b.range.begin + o << ',' << b.range.end - 1 + o << '\n';
  } else if (c.format == "json") {
    nlohmann::json doc;
    doc["m"] = c.m;
    doc["N"] = c.n;
    doc["one_based"] = c.one_based;
    doc["total"] = table.size();
    doc["levels"] = nlohmann::json::array();
    for (const auto& b : table.blocks())
      doc["levels"].push_back({{"p", b.signature.p},
                               {"q", b.signature.q},
                               {"distance", b.signature.distance()},
                               {"cardinality", b.range.size()},
                               {"first", b.range.begin + o},
                               {"last", b.range.end - 1 + o}});
    os << doc.dump(2) << '\n';
  } else {
    os << "base\tcardinality\tindices\n";
    for (const auto& b : table.blocks())
      os << b.signature.to_string() << '\t' << b.range.size() << '\t'
         << range_text(b.range, c.one_based) << '\n';
    os << "total\t" << table.size() << '\n';
  }
  emit(c, os.str());
  return kOk;
}

struct VerifyArgs {
  int max_distance = -1;
  bool skip_spaces = false;
};

int cmd_verify(const Common& c, const VerifyArgs& a) {
  const cs::VertexTable table = make_table(c);
  std::ostringstream os;
  bool ok = true;
  auto line = [&](bool passed, bool informational, const std::string& name,
                  const std::string& detail) {
    const char* tag = passed ? "PASS" : informational ? "INFO" : "FAIL";
    if (!passed && !informational) ok = false;
    os << tag << '\t' << name << '\t' << detail << '\n';
  };

  const auto checks = cs::verify_all(table, {a.max_distance});
  for (const auto& x : checks) {
    std::string detail = x.scope;
    if (!x.passed)
      detail += " residual_nnz=" + std::to_string(x.residual_nnz) +
                " residual_max=" + std::to_string(x.residual_max);
    line(x.passed, x.informational, x.identity, detail);
  }

  if (!a.skip_spaces) {
    const auto ops = cs::GraphOperators::build(table);
    for (const auto& params : cs::enumerate_space_params(table, ops)) {
      if (a.max_distance >= 0 && params.base.distance() > a.max_distance) continue;
      const auto w = cs::build_W(table, ops, params);
      if (w.dimension() == 0) continue;
      const auto v = cs::build_V(table, ops, w);
      const std::string tag = params.to_string();
      line(cs::verify_invariance(v, ops.adjacency), false, "invariance",
           tag + " dim W=" + std::to_string(w.dimension()) + " dim V=" + std::to_string(v.dimension()));
      if (c.m == 3 || c.m == 4) {
        const auto mc = cs::check_multipliers(table, ops, w);
        line(mc.failures == 0, false, "multiplier_recursion",
             tag + " identities=" + std::to_string(mc.identities) +
                 " failures=" + std::to_string(mc.failures));
        const auto lm = cs::check_level_matrix(table, ops, w);
        line(lm.passed(), false, "level_matrix", tag + " chains=" + std::to_string(lm.chains));
      }
    }
    if (c.m == 3 || c.m == 5) {
      const auto es = cs::eigen_shift_check(table, ops);
      line(es.ok(), false, "eigen_shift",
           "checked=" + std::to_string(es.checked) + " passed=" + std::to_string(es.passed) +
               " skipped_zero=" + std::to_string(es.skipped_zero));
      if (es.lateral_checked > 0)
        line(es.lateral_passed == es.lateral_checked, true, "eigen_shift_lateral",
             "checked=" + std::to_string(es.lateral_checked) +
                 " passed=" + std::to_string(es.lateral_passed));
    }
  }
  os << (ok ? "ALL PASS" : "FAILED") << '\n';
  emit(c, os.str());
  return ok ? kOk : kVerificationFailure;
}

struct SpacesArgs {
  int max_distance = -1;
};

int cmd_spaces(const Common& c, const SpacesArgs& a) {
  const cs::VertexTable table = make_table(c);
  const auto ops = cs::GraphOperators::build(table);
  std::ostringstream os;
  bool ok = true;
  if (c.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& params : cs::enumerate_space_params(table, ops)) {
      if (a.max_distance >= 0 && params.base.distance() > a.max_distance) continue;
      const auto w = cs::build_W(table, ops, params);
      const auto v = cs::build_V(table, ops, w);
      doc.push_back({{"W", nlohmann::json::parse(cs::to_json(w, c.one_based, -1))},
                     {"V", nlohmann::json::parse(cs::to_json(v, c.one_based, -1))}});
    }
    os << doc.dump(1) << '\n';
  } else {
    os << "space\tdim_W\tdim_V\tinvariant\n";
    std::size_t total = 0;
    for (const auto& params : cs::enumerate_space_params(table, ops)) {
      if (a.max_distance >= 0 && params.base.distance() > a.max_distance) continue;
      const auto w = cs::build_W(table, ops, params);
      const auto v = cs::build_V(table, ops, w);
      const bool inv = cs::verify_invariance(v, ops.adjacency);
      ok = ok && inv;
      total += v.dimension();
      os << params.to_string() << '\t' << w.dimension() << '\t' << v.dimension() << '\t'
         << (inv ? "yes" : "no") << '\n';
    }
    os << "total\t-\t" << total << '\t' << (ok ? "yes" : "no") << '\n';
  }
  emit(c, os.str());
  return ok ? kOk : kVerificationFailure;
}

struct SpectrumArgs {
  int sign = -1;
};

int cmd_spectrum(const Common& c, const SpectrumArgs& a) {
  const cs::VertexTable table = make_table(c);
  const auto fb = cs::gft(table, a.sign);
  emit(c, cs::eigencatalog_csv(fb, table, c.one_based));
  return kOk;
}

struct SslArgs {
  cs::SslConfig config;
  std::vector<std::string> emit;
  std::string output_dir = ".";
  std::optional<std::uint64_t> seed;
  bool linkage = false;
};

int cmd_ssl(const Common& c, SslArgs& a) {
  a.config.m = c.m;
  a.config.dimension = c.n;
  a.config.validate();
  if (c.format != "text" && c.format != "csv" && c.format != "json")
    throw cs::ConfigError("unknown format " + c.format);
  const cs::VertexTable table = make_table(c);
  const auto ops = cs::GraphOperators::build(table);
  const auto t0 = std::chrono::steady_clock::now();
  cs::SslReport report = cs::decompose(table, a.config);
  cs::classify(report, table, ops);

  bool ok = true;
  std::ostringstream os;
  os << cs::class_table_text(report, c.one_based);
  os << "nonzero\t" << report.nonzero << '\n';
  os << "spectrum\t[" << cs::format_real(report.spectrum_min()) << ", "
     << cs::format_real(report.spectrum_max()) << "]\n";
  os << "unitarity_error\t" << sci(report.unitarity_error) << '\n';
  os << "diagonalization_error\t" << sci(report.diagonalization_error) << '\n';
  os << "idempotence_error\t" << sci(report.idempotence_error) << '\n';
  os << "route_discrepancy\t" << sci(report.route_discrepancy) << '\n';

  for (const auto& cl : report.clusters)
    if (cl.ambiguous) {
      ok = false;
      os << "AMBIGUOUS\tcluster " << cl.begin << '-' << cl.end << " R1 residual "
         << cs::format_real(cl.r1_residual) << '\n';
    }

  if (a.seed) {
    cs::SslReport rotated = report;
    cs::classify(rotated, table, ops, a.seed);
    const bool same = cs::class_table_text(rotated, c.one_based) == cs::class_table_text(report, c.one_based);
    ok = ok && same;
    os << (same ? "PASS" : "FAIL") << "\trotation_invariance\tseed " << *a.seed << '\n';
  }
  if (a.linkage) {
    const auto lk = cs::check_linkage(report, table, ops);
    for (const auto& cl : lk.clusters) {
      const auto& x = report.clusters[cl.cluster];
      os << (cl.passed ? "PASS" : "FAIL") << "\tlinkage\t" << x.base.to_string() << " ["
         << x.begin + (c.one_based ? 1 : 0) << ',' << x.end - 1 + (c.one_based ? 1 : 0) << "]";
      for (const auto& p : cl.pieces) os << ' ' << p.space << '=' << p.dimension;
      os << " residual " << cs::format_real(cl.residual) << '\n';
    }
    ok = ok && lk.passed();
  }

  namespace fs = std::filesystem;
  const fs::path dir(a.output_dir);
  if (!a.emit.empty() || c.format != "text") fs::create_directories(dir);
  if (c.format == "csv") write_file(dir / "ssl_spectrum.csv", cs::spectrum_csv(report, c.one_based));
  if (c.format == "json") write_file(dir / "ssl_report.json", cs::report_json(report, c.one_based));
  for (const auto& e : a.emit) {
    if (e == "fig3") {
      write_file(dir / "fig3.txt", cs::fig3_text(report, c.one_based));
    } else if (e == "fig4") {
      write_file(dir / "fig4.txt", cs::fig4_text(report, c.one_based));
      const auto lv = cs::level_vector_check(report, table);
      ok = ok && lv.passed;
      os << (lv.passed ? "PASS" : "FAIL") << "\tlevel_vectors\t" << lv.vectors
         << " vectors, max deviation " << cs::format_real(lv.max_deviation) << '\n';
    } else if (e == "fig5") {
      write_file(dir / "fig5.txt", cs::fig5_text(report, table, c.one_based));
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "ssl: " << secs << " s\n";
  emit(c, os.str());
  return ok ? kOk : kVerificationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Products of short cycles: level sets, operator identities, invariant spaces, "
               "spatio-spectral limiting"};
  app.require_subcommand(1);

  Common common;
  VerifyArgs verify_args;
  SpacesArgs spaces_args;
  SpectrumArgs spectrum_args;
  SslArgs ssl_args;
  const std::vector<std::string> formats{"text", "csv", "json"};

  auto* levels = app.add_subcommand("levels", "level-set cardinalities and index ranges");
  add_common(levels, common);
  levels->add_option("--format", common.format)->check(CLI::IsMember(formats));

  auto* verify = app.add_subcommand("verify", "exact operator identities");
  add_common(verify, common);
  verify->add_option("--max-distance", verify_args.max_distance,
                     "only check blocks with p + 2q at most this");
  verify->add_flag("--skip-spaces", verify_args.skip_spaces,
                   "skip invariant-space, multiplier and level-matrix checks");

  auto* spaces = app.add_subcommand("spaces", "W and V bases");
  add_common(spaces, common);
  spaces->add_option("--format", common.format)->check(CLI::IsMember({"text", "json"}));
  spaces->add_option("--max-distance", spaces_args.max_distance,
                     "only spaces based at distance at most this");

  auto* spectrum = app.add_subcommand("spectrum", "adjacency and Laplacian eigencatalog (CSV)");
  add_common(spectrum, common);
  spectrum->add_option("--sign", spectrum_args.sign, "DFT exponent sign")
      ->check(CLI::IsMember({-1, 1}));

  auto* ssl = app.add_subcommand("ssl", "spatio-spectral limiting");
  add_common(ssl, common);
  auto& cfg = ssl_args.config;
  ssl->add_option("--K", cfg.radius, "path-distance radius")->required();
  ssl->add_option("--sign", cfg.sign, "DFT exponent sign")->check(CLI::IsMember({-1, 1}));
  ssl->add_option("--format", common.format, "text, or also write ssl_spectrum.csv / ssl_report.json")
      ->check(CLI::IsMember(formats));
  ssl->add_option("--emit", ssl_args.emit, "figure data to write")
      ->check(CLI::IsMember({"fig3", "fig4", "fig5"}));
  ssl->add_option("--output-dir", ssl_args.output_dir, "directory for exported files");
  ssl->add_option("--seed", ssl_args.seed, "rotate cluster bases randomly and re-classify");
  ssl->add_flag("--linkage", ssl_args.linkage, "check clusters against invariant spaces");
  ssl->add_option("--cluster-tol", cfg.tol.cluster)->capture_default_str();
  ssl->add_option("--zero-tol", cfg.tol.zero)->capture_default_str();
  ssl->add_option("--r1-tol", cfg.tol.r1_residual)->capture_default_str();
  ssl->add_option("--linkage-tol", cfg.tol.linkage)->capture_default_str();
  ssl->add_option("--level-tol", cfg.tol.level_constant)->capture_default_str();
  ssl->add_option("--unitarity-tol", cfg.tol.unitarity)->capture_default_str();
  ssl->add_option("--diagonalization-tol", cfg.tol.diagonalization)->capture_default_str();
  ssl->add_option("--projection-tol", cfg.tol.projection)->capture_default_str();
  ssl->add_option("--spectrum-tol", cfg.tol.spectrum)->capture_default_str();
  ssl->add_option("--route-tol", cfg.tol.route_agreement)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadConfig;
  }

  try {
    if (*levels) return cmd_levels(common);
    if (*verify) return cmd_verify(common, verify_args);
    if (*spaces) return cmd_spaces(common, spaces_args);
    if (*spectrum) return cmd_spectrum(common, spectrum_args);
    if (*ssl) return cmd_ssl(common, ssl_args);
  } catch (const cs::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadConfig;
  } catch (const cs::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const cs::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadConfig;
  }
  return kBadConfig;
}
