#pragma once

// Exact operator identities for C_3^N, C_4^N and C_5^N. Every check compares
// two integer operators entrywise; a check passes only with a zero residual.

#include <cstdint>
#include <string>
#include <vector>

#include "cyclespace/group.hpp"
#include "cyclespace/operators.hpp"

namespace cyclespace {

struct IdentityCheck {
  std::string identity;
  std::string scope;
  bool passed = false;
  std::size_t residual_nnz = 0;
  std::int64_t residual_max = 0;
  /// Informational checks document stated forms and never gate a run.
  bool informational = false;
};

struct VerifyOptions {
  /// Only blocks with p + 2q <= max_distance are checked (negative: all).
  int max_distance = -1;
};

/// C = [A_-, A_+].
IntOperator inner_outer_commutator(const GraphOperators& ops);

/// Scalar in C = c I - R_1 on Sigma_{p,q} of C_5^N, namely 2N - 2p - 3q.
int c5_commutator_scalar(int dimension, LevelSignature sig);
/// Stated scalar: 2(N - q) - 3p, paired with +R_1.
int c5_stated_scalar(int dimension, LevelSignature sig);

/// A = A_+ + A_- + A_0, A_- = A_+^T, and A_0 = 0 for m = 4.
std::vector<IdentityCheck> check_decomposition(const VertexTable& t, const GraphOperators& ops);
/// C has nonzero entries only between vertices with equal level vectors.
std::vector<IdentityCheck> check_support_property(const VertexTable& t, const GraphOperators& ops);
/// m = 3: C P_r = ((2N - 3r) I - A_0) P_r.
std::vector<IdentityCheck> check_commutator_c3(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt = {});
/// m = 4: C P_{p,q} = 2(N - r) P_{p,q}, r = p + 2q.
std::vector<IdentityCheck> check_commutator_c4(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt = {});
/// m = 5: C P_{p,q} = ((2N - 2p - 3q) I - R_1) P_{p,q}.
std::vector<IdentityCheck> check_commutator_c5(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt = {});
/// m = 5, stated form: C P_{p,q} = ((2(N - q) - 3p) I + R_1) P_{p,q}.
std::vector<IdentityCheck> check_commutator_c5_stated(const VertexTable& t,
                                                         const GraphOperators& ops,
                                                         const VerifyOptions& opt = {});
/// m = 5: T_{(p,q)} = A_0 A_{(p,q)->(p-1,q+1)} - A_{(p,q)->(p-1,q+1)} A_0 on Sigma_{p,q}.
std::vector<IdentityCheck> check_twisted_outer(const VertexTable& t, const GraphOperators& ops,
                                               const VerifyOptions& opt = {});
/// m = 5: A_{(p-1,q+1)->(p,q)} T_{(p,q)} = (R_1 - A_0) + T_{(p+1,q-1)} A_{(p,q)->(p+1,q-1)}
/// on Sigma_{p,q}.
std::vector<IdentityCheck> check_neutral_commutator_c5(const VertexTable& t,
                                                       const GraphOperators& ops,
                                                       const VerifyOptions& opt = {});
/// m = 5: A_- A_+ h = (2N - 2p' - 3q') h - R_1 h + A_+ A_- h for h on Sigma_{p',q'}.
std::vector<IdentityCheck> check_kernel_interchange(const VertexTable& t, const GraphOperators& ops,
                                                    const VerifyOptions& opt = {});
/// rho_k is an involution commuting with A_+ and A_-.
std::vector<IdentityCheck> check_reflections(const VertexTable& t, const GraphOperators& ops);
/// m = 5: R_1 A_0 = A_0 R_1 on each block, A_0^2 = I on Sigma_{p,1}, and
/// A_0 on Sigma_{p,q} is annihilated by a polynomial of degree q + 1.
std::vector<IdentityCheck> check_neutral_structure(const VertexTable& t, const GraphOperators& ops,
                                                   const VerifyOptions& opt = {});

/// Every identity in scope for the table's modulus.
std::vector<IdentityCheck> verify_all(const VertexTable& t, const VerifyOptions& opt = {});

/// True iff every non-informational check passed.
bool all_passed(const std::vector<IdentityCheck>& checks);

}  // namespace cyclespace
