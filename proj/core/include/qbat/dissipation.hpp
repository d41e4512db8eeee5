#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "qbat/lattice.hpp"
#include "qbat/types.hpp"

namespace qbat {

enum class JumpKind { bond, dephasing, generic };

/// One Lindblad channel. Bond and dephasing jumps are rank-1, L = u v^T,
/// which the evaluators exploit; generic jumps fall back to dense algebra.
struct JumpOperator {
  Matrix mat;
  double rate = 1.0;
  JumpKind kind = JumpKind::generic;
  int site_i = -1;
  int site_j = -1;
  Vector u;  // empty unless rank-1
  Vector v;

  bool rank_one() const { return u.size() > 0; }

  JumpOperator with_rate(double r) const {
    JumpOperator out = *this;
    out.rate = r;
    return out;
  }

  static JumpOperator from_rank_one(const Vector& u, const Vector& v, double rate = 1.0,
                                    JumpKind kind = JumpKind::generic);
  static JumpOperator from_matrix(Matrix m, double rate = 1.0);
};

/// Single-particle bond dissipator on sites (i, j): (u)(v^T) with
/// u = e_i + eta e_j, v = e_i - eta e_j, eta = e^{i phase}. Rate defaults
/// to 1 and is attached separately via with_rate.
JumpOperator bond_jump(int i, int j, double phase, int dim);

/// Site-occupation dephasing projector e_j e_j^T.
JumpOperator dephasing_jump(int j, int dim);

/// Dense N^2 x N^2 generator in the column-stacking convention
/// vec(A X B) = (B^T kron A) vec(X):
///   -i(I kron H - H^T kron I)
///   + sum_k rate_k [ conj(L_k) kron L_k
///                    - 1/2 I kron (L_k^dag L_k) - 1/2 (L_k^dag L_k)^T kron I ].
struct LiouvillianMatrix {
  Matrix mat;
  static constexpr const char* stacking = "column";
};

LiouvillianMatrix build_liouvillian(const HermitianOperator& h,
                                    const std::vector<JumpOperator>& jumps);

/// Same generator in sparse storage; used by the large-N steady-state solver.
Eigen::SparseMatrix<Complex> build_liouvillian_sparse(const HermitianOperator& h,
                                                      const std::vector<JumpOperator>& jumps);

/// dRho/dTau evaluated in operator form, O(N^2) per rank-1 jump; agrees with
/// the superoperator acting on vec(rho) for arbitrary square input.
Matrix rhs(const Matrix& rho, const HermitianOperator& h,
           const std::vector<JumpOperator>& jumps);

/// Adiabatic-elimination rate Gamma Omega^2 / (Delta^2 + (Gamma/2)^2) of the
/// driven auxiliary-site realization.
double effective_rate(double omega, double gamma_decay, double detuning);

}  // namespace qbat
