#include "qbat/dissipation.hpp"

#include <unsupported/Eigen/KroneckerProduct>

namespace qbat {

namespace {

void check_site(int s, int dim, const char* who) {
  if (s < 0 || s >= dim) throw std::invalid_argument(std::string(who) + ": site out of range");
}

// Nonzero entries of a vector, for the sparse rank-1 evaluation path.
std::vector<std::pair<Eigen::Index, Complex>> nonzeros(const Vector& x) {
  std::vector<std::pair<Eigen::Index, Complex>> out;
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (x(k) != Complex(0.0)) out.emplace_back(k, x(k));
  return out;
}

}  // namespace

JumpOperator JumpOperator::from_rank_one(const Vector& u, const Vector& v, double rate,
                                         JumpKind kind) {
  if (u.size() != v.size() || u.size() == 0)
    throw std::invalid_argument("JumpOperator: rank-1 factors must share a positive size");
  if (rate < 0) throw std::invalid_argument("JumpOperator: negative rate");
  JumpOperator out;
  out.mat = u * v.transpose();
  out.rate = rate;
  out.kind = kind;
  out.u = u;
  out.v = v;
  return out;
}

JumpOperator JumpOperator::from_matrix(Matrix m, double rate) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw std::invalid_argument("JumpOperator: matrix must be square and non-empty");
  if (rate < 0) throw std::invalid_argument("JumpOperator: negative rate");
  JumpOperator out;
  out.mat = std::move(m);
  out.rate = rate;
  out.kind = JumpKind::generic;
  return out;
}

JumpOperator bond_jump(int i, int j, double phase, int dim) {
  check_site(i, dim, "bond_jump");
  check_site(j, dim, "bond_jump");
  if (i == j) throw std::invalid_argument("bond_jump: sites must differ");
  const Complex eta = std::exp(Complex(0.0, phase));
  Vector u = Vector::Zero(dim);
  Vector v = Vector::Zero(dim);
  u(i) = 1.0;
  u(j) = eta;
  v(i) = 1.0;
  v(j) = -eta;
  JumpOperator out = JumpOperator::from_rank_one(u, v, 1.0, JumpKind::bond);
  out.site_i = i;
  out.site_j = j;
  return out;
}

JumpOperator dephasing_jump(int j, int dim) {
  check_site(j, dim, "dephasing_jump");
  Vector e = Vector::Zero(dim);
  e(j) = 1.0;
  JumpOperator out = JumpOperator::from_rank_one(e, e, 1.0, JumpKind::dephasing);
  out.site_i = j;
  out.site_j = j;
  return out;
}

LiouvillianMatrix build_liouvillian(const HermitianOperator& h,
                                    const std::vector<JumpOperator>& jumps) {
  const Eigen::Index n = h.dim();
  const Matrix id = Matrix::Identity(n, n);
  const Complex mi(0.0, -1.0);
  Matrix l = mi * (Eigen::kroneckerProduct(id, h.mat) -
                   Eigen::kroneckerProduct(h.mat.transpose(), id));
  for (const auto& jump : jumps) {
    if (jump.mat.rows() != n)
      throw std::invalid_argument("build_liouvillian: jump dimension mismatch");
    const Matrix ldl = jump.mat.adjoint() * jump.mat;
    l += jump.rate * (Eigen::kroneckerProduct(jump.mat.conjugate(), jump.mat) -
                      0.5 * Eigen::kroneckerProduct(id, ldl) -
                      0.5 * Eigen::kroneckerProduct(ldl.transpose(), id));
  }
  return {std::move(l)};
}

Eigen::SparseMatrix<Complex> build_liouvillian_sparse(const HermitianOperator& h,
                                                      const std::vector<JumpOperator>& jumps) {
  using Sparse = Eigen::SparseMatrix<Complex>;
  const Eigen::Index n = h.dim();
  Sparse hs = h.mat.sparseView();
  Sparse id(n, n);
  id.setIdentity();
  const Complex mi(0.0, -1.0);
  Sparse l = Sparse(Eigen::kroneckerProduct(id, hs)) * mi -
             Sparse(Eigen::kroneckerProduct(Sparse(hs.transpose()), id)) * mi;
  for (const auto& jump : jumps) {
    if (jump.mat.rows() != n)
      throw std::invalid_argument("build_liouvillian_sparse: jump dimension mismatch");
    Sparse ls = jump.mat.sparseView();
    Sparse ldl = Sparse(ls.adjoint()) * ls;
    l = l + Sparse(Eigen::kroneckerProduct(Sparse(ls.conjugate()), ls)) * Complex(jump.rate) -
        Sparse(Eigen::kroneckerProduct(id, ldl)) * Complex(0.5 * jump.rate) -
        Sparse(Eigen::kroneckerProduct(Sparse(ldl.transpose()), id)) * Complex(0.5 * jump.rate);
  }
  l.makeCompressed();
  return l;
}

Matrix rhs(const Matrix& rho, const HermitianOperator& h,
           const std::vector<JumpOperator>& jumps) {
  const Eigen::Index n = h.dim();
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("rhs: state dimension mismatch");
  const Complex mi(0.0, -1.0);
  Matrix out = mi * (h.mat * rho - rho * h.mat);
  for (const auto& jump : jumps) {
    if (jump.mat.rows() != n) throw std::invalid_argument("rhs: jump dimension mismatch");
    const double g = jump.rate;
    if (g == 0.0) continue;
    if (jump.rank_one()) {
      // L = u v^T:  L rho L^dag = (v^T rho conj(v)) u u^dag,
      //             L^dag L = |u|^2 conj(v) v^T.
      const auto unz = nonzeros(jump.u);
      const auto vnz = nonzeros(jump.v);
      Eigen::RowVectorXcd arow = Eigen::RowVectorXcd::Zero(n);   // v^T rho
      Vector acol = Vector::Zero(n);                             // rho conj(v)
      for (const auto& [k, vk] : vnz) {
        arow += vk * rho.row(k);
        acol += std::conj(vk) * rho.col(k);
      }
      Complex c(0.0);
      for (const auto& [k, vk] : vnz) c += arow(k) * std::conj(vk);
      const double su2 = jump.u.squaredNorm();
      for (const auto& [k1, uk1] : unz)
        for (const auto& [k2, uk2] : unz) out(k1, k2) += g * c * uk1 * std::conj(uk2);
      for (const auto& [k, vk] : vnz) {
        out.row(k) -= (0.5 * g * su2) * std::conj(vk) * arow;
        out.col(k) -= (0.5 * g * su2) * vk * acol;
      }
    } else {
      const Matrix lrho = jump.mat * rho;
      const Matrix ldl = jump.mat.adjoint() * jump.mat;
      out += g * (lrho * jump.mat.adjoint() - 0.5 * ldl * rho - 0.5 * rho * ldl);
    }
  }
  return out;
}

double effective_rate(double omega, double gamma_decay, double detuning) {
  if (gamma_decay <= 0) throw std::invalid_argument("effective_rate: decay rate must be positive");
  return gamma_decay * omega * omega /
         (detuning * detuning + 0.25 * gamma_decay * gamma_decay);
}

}  // namespace qbat
