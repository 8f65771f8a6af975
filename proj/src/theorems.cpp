#include "cyclespace/theorems.hpp"

#include <algorithm>

#include "cyclespace/exact.hpp"

namespace cyclespace {

namespace {

IdentityCheck make_check(std::string identity, std::string scope, const IntOperator& lhs,
                         const IntOperator& rhs) {
  const CommutatorReport report = compare(lhs, rhs);
  IdentityCheck c;
  c.identity = std::move(identity);
  c.scope = std::move(scope);
  c.passed = report.is_exact_match;
  c.residual_nnz = report.residual.nnz();
  c.residual_max = report.residual.max_abs();
  return c;
}

IdentityCheck make_flag(std::string identity, std::string scope, bool passed) {
  IdentityCheck c;
  c.identity = std::move(identity);
  c.scope = std::move(scope);
  c.passed = passed;
  c.residual_nnz = passed ? 0 : 1;
  c.residual_max = passed ? 0 : 1;
  return c;
}

bool in_scope(LevelSignature sig, const VerifyOptions& opt) {
  return opt.max_distance < 0 || sig.distance() <= opt.max_distance;
}

std::vector<LevelSignature> signatures_in_scope(const VertexTable& t, const VerifyOptions& opt) {
  std::vector<LevelSignature> out;
  for (const auto& b : t.blocks())
    if (in_scope(b.signature, opt)) out.push_back(b.signature);
  return out;
}

bool has_block(const VertexTable& t, LevelSignature sig) {
  return sig.p >= 0 && sig.q >= 0 && is_feasible(t.modulus(), t.dimension(), sig);
}

IntOperator scaled_identity(std::size_t n, IntOperator::Value s) {
  return s * IntOperator::identity(n);
}

std::string dims(const VertexTable& t) {
  return "m=" + std::to_string(t.modulus()) + " N=" + std::to_string(t.dimension());
}

}  // namespace

IntOperator inner_outer_commutator(const GraphOperators& ops) {
  return commutator(ops.inner, ops.outer);
}

int c5_commutator_scalar(int dimension, LevelSignature sig) {
  return 2 * dimension - 2 * sig.p - 3 * sig.q;
}

int c5_stated_scalar(int dimension, LevelSignature sig) {
  return 2 * (dimension - sig.q) - 3 * sig.p;
}

std::vector<IdentityCheck> check_decomposition(const VertexTable& t, const GraphOperators& ops) {
  std::vector<IdentityCheck> out;
  out.push_back(make_check("A = A+ + A- + A0", dims(t), ops.adjacency,
                           ops.outer + ops.inner + ops.neutral));
  out.push_back(make_check("A- = A+^T", dims(t), ops.inner, ops.outer.transpose()));
  out.push_back(make_check("A symmetric", dims(t), ops.adjacency, ops.adjacency.transpose()));
  if (t.modulus() == 4)
    out.push_back(make_check("A0 = 0", dims(t), ops.neutral, IntOperator(t.size(), t.size())));
  if (t.modulus() == 5) {
    for (const auto& b : t.blocks()) {
      const LevelSignature s = b.signature;
      IntOperator sum(t.size(), t.size());
      for (LevelSignature to : {LevelSignature{s.p + 1, s.q}, LevelSignature{s.p - 1, s.q + 1}})
        if (has_block(t, to)) sum = sum + subadjacency(ops.adjacency, t, s, to);
      const IntOperator outer_block = ops.outer * level_projector(t, s);
      out.push_back(make_check("A+ = A(p,q)->(p+1,q) + A(p,q)->(p-1,q+1)", s.to_string(),
                               outer_block, sum));
    }
  }
  return out;
}

std::vector<IdentityCheck> check_support_property(const VertexTable& t, const GraphOperators& ops) {
  const IntOperator c = inner_outer_commutator(ops);
  bool ok = true;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (const auto& e : c.row(i))
      if (!same_level_vector(t.at(i), t.at(e.col))) {
        ok = false;
        ++bad;
      }
  IdentityCheck check = make_flag("[A-,A+] couples only equal level vectors", dims(t), ok);
  check.residual_nnz = bad;
  return {check};
}

std::vector<IdentityCheck> check_commutator_c3(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 3) return out;
  const IntOperator c = inner_outer_commutator(ops);
  const int n = t.dimension();
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const int r = s.distance();
    const IntOperator proj = level_projector(t, s);
    out.push_back(make_check("[A-,A+] = (2N-3r)I - A0", "r=" + std::to_string(r), c * proj,
                             (scaled_identity(t.size(), 2 * n - 3 * r) - ops.neutral) * proj));
  }
  return out;
}

std::vector<IdentityCheck> check_commutator_c4(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 4) return out;
  const IntOperator c = inner_outer_commutator(ops);
  const int n = t.dimension();
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const int r = s.distance();
    const IntOperator proj = level_projector(t, s);
    out.push_back(make_check("[A-,A+] = 2(N-r)I", s.to_string(), c * proj,
                             scaled_identity(t.size(), 2 * (n - r)) * proj));
  }
  return out;
}

std::vector<IdentityCheck> check_commutator_c5(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 5) return out;
  const IntOperator c = inner_outer_commutator(ops);
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const IntOperator proj = level_projector(t, s);
    const IntOperator rhs =
        scaled_identity(t.size(), c5_commutator_scalar(t.dimension(), s)) - ops.r1;
    out.push_back(make_check("[A-,A+] = (2N-2p-3q)I - R1", s.to_string(), c * proj, rhs * proj));
  }
  return out;
}

std::vector<IdentityCheck> check_commutator_c5_stated(const VertexTable& t,
                                                         const GraphOperators& ops,
                                                         const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 5) return out;
  const IntOperator c = inner_outer_commutator(ops);
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const IntOperator proj = level_projector(t, s);
    const IntOperator rhs =
        scaled_identity(t.size(), c5_stated_scalar(t.dimension(), s)) + ops.r1;
    IdentityCheck check =
        make_check("[A-,A+] = (2(N-q)-3p)I + R1 (stated form)", s.to_string(), c * proj, rhs * proj);
    check.informational = true;
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<IdentityCheck> check_twisted_outer(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 5) return out;
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const LevelSignature to{s.p - 1, s.q + 1};
    if (!has_block(t, to)) continue;
    const IntOperator up = subadjacency(ops.adjacency, t, s, to);
    out.push_back(make_check("twisted outer = A0 A+ - A+ A0", s.to_string(),
                             twisted_outer(t, s), ops.neutral * up - up * ops.neutral));
  }
  return out;
}

std::vector<IdentityCheck> check_neutral_commutator_c5(const VertexTable& t,
                                                       const GraphOperators& ops,
                                                       const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 5) return out;
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const LevelSignature up_to{s.p - 1, s.q + 1};
    if (!has_block(t, up_to)) continue;
    const IntOperator proj = level_projector(t, s);
    const IntOperator back = subadjacency(ops.adjacency, t, up_to, s);
    const IntOperator lhs = back * twisted_outer(t, s);
    IntOperator rhs = proj * (ops.r1 - ops.neutral) * proj;
    const LevelSignature down_to{s.p + 1, s.q - 1};
    if (has_block(t, down_to))
      rhs = rhs + twisted_outer(t, down_to) * subadjacency(ops.adjacency, t, s, down_to);
    out.push_back(make_check("A- T(p,q) = (R1 - A0) + T(p+1,q-1) A(p,q)->(p+1,q-1)",
                             s.to_string(), lhs, rhs));
  }
  return out;
}

std::vector<IdentityCheck> check_kernel_interchange(const VertexTable& t, const GraphOperators& ops,
                                                    const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 5) return out;
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const IntOperator proj = level_projector(t, s);
    const IntOperator h_out = ops.outer * proj;
    const IntOperator h_in = ops.inner * proj;
    const IntOperator lhs = ops.inner * h_out;
    const IntOperator rhs = scaled_identity(t.size(), c5_commutator_scalar(t.dimension(), s)) * proj -
                            ops.r1 * proj + ops.outer * h_in;
    out.push_back(make_check("A-A+h = (2N-2p-3q)h - R1h + A+A-h", s.to_string(), lhs, rhs));
  }
  return out;
}

std::vector<IdentityCheck> check_reflections(const VertexTable& t, const GraphOperators& ops) {
  std::vector<IdentityCheck> out;
  const IntOperator id = IntOperator::identity(t.size());
  for (int k = 0; k < t.dimension(); ++k) {
    const IntOperator rho = reflection_op(t, k);
    const std::string scope = "k=" + std::to_string(k);
    out.push_back(make_check("rho_k^2 = I", scope, rho * rho, id));
    out.push_back(make_check("rho_k A+ = A+ rho_k", scope, rho * ops.outer, ops.outer * rho));
    out.push_back(make_check("rho_k A- = A- rho_k", scope, rho * ops.inner, ops.inner * rho));
  }
  return out;
}

std::vector<IdentityCheck> check_neutral_structure(const VertexTable& t, const GraphOperators& ops,
                                                   const VerifyOptions& opt) {
  std::vector<IdentityCheck> out;
  if (t.modulus() != 5) return out;
  for (LevelSignature s : signatures_in_scope(t, opt)) {
    const IntOperator proj = level_projector(t, s);
    out.push_back(make_check("R1 A0 = A0 R1", s.to_string(), ops.r1 * ops.neutral * proj,
                             ops.neutral * ops.r1 * proj));
    if (s.q == 1)
      out.push_back(make_check("A0^2 = I on Sigma_{p,1}", s.to_string(),
                               ops.neutral * ops.neutral * proj, proj));

    // Krylov matrices I, A0, ..., A0^{q+1} on the block, flattened.
    const IndexRange range = t.level_set(s);
    const std::size_t w = range.size();
    EchelonBasis krylov(w * w);
    IntOperator power = proj;
    for (int k = 0; k <= s.q + 1; ++k) {
      RationalVector flat(w * w, Rational(0));
      for (std::size_t i = range.begin; i < range.end; ++i)
        for (const auto& e : power.row(i))
          flat[(i - range.begin) * w + (e.col - range.begin)] = Rational(static_cast<long>(e.value));
      krylov.add(flat);
      power = ops.neutral * power;
    }
    IdentityCheck c = make_flag("A0 annihilated by a degree q+1 polynomial", s.to_string(),
                                krylov.rank() <= static_cast<std::size_t>(s.q) + 1);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<IdentityCheck> verify_all(const VertexTable& t, const VerifyOptions& opt) {
  const GraphOperators ops = GraphOperators::build(t);
  std::vector<IdentityCheck> out;
  auto append = [&out](std::vector<IdentityCheck> more) {
    std::move(more.begin(), more.end(), std::back_inserter(out));
  };
  append(check_decomposition(t, ops));
  append(check_support_property(t, ops));
  append(check_reflections(t, ops));
  switch (t.modulus()) {
    case 3:
      append(check_commutator_c3(t, ops, opt));
      break;
    case 4:
      append(check_commutator_c4(t, ops, opt));
      break;
    case 5:
      append(check_commutator_c5(t, ops, opt));
      append(check_commutator_c5_stated(t, ops, opt));
      append(check_twisted_outer(t, ops, opt));
      append(check_neutral_commutator_c5(t, ops, opt));
      append(check_kernel_interchange(t, ops, opt));
      append(check_neutral_structure(t, ops, opt));
      break;
    default:
      break;
  }
  return out;
}

bool all_passed(const std::vector<IdentityCheck>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const IdentityCheck& c) { return c.informational || c.passed; });
}

}  // namespace cyclespace
