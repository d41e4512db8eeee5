#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qbat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Iterative solver failed to reach its convergence target.
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The generator admits more than one stationary state (or the check failed).
struct NonUniqueSteadyState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return m.rows() == m.cols() &&
         (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

/// Column-stacking convention throughout: vec(A X B) = (B^T kron A) vec(X).
inline Vector vectorize(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

inline Matrix unvectorize(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) throw std::invalid_argument("unvectorize: size mismatch");
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

/// Unit-trace positive-semidefinite Hermitian matrix; the battery state.
struct DensityMatrix {
  Matrix mat;

  Eigen::Index dim() const { return mat.rows(); }

  static DensityMatrix pure(const Vector& psi) {
    double n2 = psi.squaredNorm();
    if (n2 <= 0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
    return {psi * psi.adjoint() / n2};
  }

  static DensityMatrix maximally_mixed(Eigen::Index n) {
    if (n < 1) throw std::invalid_argument("DensityMatrix::maximally_mixed: n < 1");
    return {Matrix::Identity(n, n) / static_cast<double>(n)};
  }

  /// Enforce the type invariants: Hermitian within 1e-10, unit trace within
  /// 1e-10, minimum eigenvalue >= -1e-9. Throws std::invalid_argument.
  void validate() const {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("density matrix: not square");
    if (!is_hermitian(mat, 1e-10)) throw std::invalid_argument("density matrix: not Hermitian within 1e-10");
    if (std::abs(mat.trace() - Complex(1.0)) > 1e-10)
      throw std::invalid_argument("density matrix: trace differs from 1 beyond 1e-10");
    Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
      throw std::invalid_argument("density matrix: negative eigenvalue beyond -1e-9");
  }
};

}  // namespace qbat
