#include <algorithm>
#include <cmath>

#include <Eigen/SparseLU>

#include "qbat/evolve.hpp"
#include "qbat/rng.hpp"

namespace qbat {

namespace {

// Hermitize, clip slightly negative eigenvalues, renormalize the trace.
// Eigenvalues below -clip_tol are a solver failure, not noise.
DensityMatrix finalize_state(const Matrix& raw, double clip_tol) {
  Matrix m = 0.5 * (raw + raw.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw NotConverged("steady_state: eigensolver failed while cleaning the solution");
  RealVector vals = es.eigenvalues();
  const double lo = vals.minCoeff();
  if (lo < -clip_tol)
    throw NotConverged("steady_state: solution has eigenvalue " + std::to_string(lo) +
                       " below the positivity clip");
  vals = vals.cwiseMax(0.0);
  const double tr = vals.sum();
  if (tr <= 0) throw NotConverged("steady_state: solution has non-positive trace");
  vals /= tr;
  m = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  m = 0.5 * (m + m.adjoint());
  return {std::move(m)};
}

double residual_of(const DensityMatrix& rho, const HermitianOperator& h,
                   const std::vector<JumpOperator>& jumps) {
  return rhs(rho.mat, h, jumps).norm();
}

Matrix random_state(Eigen::Index n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      a(i, j) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

// Second-smallest |Re lambda| over the full generator spectrum.
double spectral_gap(const HermitianOperator& h, const std::vector<JumpOperator>& jumps) {
  const Matrix l = build_liouvillian(h, jumps).mat;
  Eigen::ComplexEigenSolver<Matrix> es(l, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NotConverged("steady_state: generator spectrum did not converge");
  std::vector<double> re(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    re[k] = std::abs(es.eigenvalues()(k).real());
  std::nth_element(re.begin(), re.begin() + 1, re.end());
  return re[1];
}

}  // namespace

DensityMatrix steady_state_nullspace(const HermitianOperator& h,
                                     const std::vector<JumpOperator>& jumps,
                                     const SteadyStateOptions& opts) {
  const Eigen::Index n = h.dim();
  if (n > opts.nullspace_max_dim)
    throw std::invalid_argument("steady_state_nullspace: dimension above nullspace_max_dim");
  const Eigen::Index n2 = n * n;
  Matrix sys(n2 + 1, n2);
  sys.topRows(n2) = build_liouvillian(h, jumps).mat;
  sys.row(n2).setZero();
  for (Eigen::Index k = 0; k < n; ++k) sys(n2, k * (n + 1)) = 1.0;
  Vector b = Vector::Zero(n2 + 1);
  b(n2) = 1.0;
  const Vector x = sys.completeOrthogonalDecomposition().solve(b);
  return finalize_state(unvectorize(x, n), opts.clip_tol);
}

DensityMatrix steady_state_relaxation(const HermitianOperator& h,
                                      const std::vector<JumpOperator>& jumps,
                                      const DensityMatrix& rho0,
                                      const SteadyStateOptions& opts) {
  const Eigen::Index n = h.dim();
  if (rho0.dim() != n)
    throw std::invalid_argument("steady_state_relaxation: state dimension mismatch");
  const Eigen::Index n2 = n * n;
  const Eigen::SparseMatrix<Complex> l = build_liouvillian_sparse(h, jumps);
  Eigen::SparseMatrix<Complex> id(n2, n2);
  id.setIdentity();

  Vector x = vectorize(rho0.mat);
  x /= unvectorize(x, n).trace();

  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
  bool analyzed = false;
  double step = 0.25;
  constexpr double kStepCap = 1e4;
  constexpr int kSolvesPerStep = 2;
  constexpr int kMaxSolves = 60;

  int solves = 0;
  while (solves < kMaxSolves) {
    Eigen::SparseMatrix<Complex> sys = id - l * Complex(step);
    sys.makeCompressed();
    if (!analyzed) {
      lu.analyzePattern(sys);
      analyzed = true;
    }
    lu.factorize(sys);
    if (lu.info() != Eigen::Success)
      throw NotConverged("steady_state_relaxation: sparse factorization failed");
    const int burst = step >= kStepCap ? kMaxSolves - solves : kSolvesPerStep;
    for (int k = 0; k < burst && solves < kMaxSolves; ++k) {
      x = lu.solve(x);
      ++solves;
      Matrix rho = unvectorize(x, n);
      rho /= rho.trace();
      x = vectorize(rho);
      if (rhs(rho, h, jumps).norm() <= opts.residual_tol)
        return finalize_state(rho, opts.clip_tol);
    }
    if (step >= kStepCap) break;
    step = std::min(step * 4.0, kStepCap);
  }
  throw NotConverged("steady_state_relaxation: residual did not reach tolerance within " +
                     std::to_string(kMaxSolves) + " implicit steps");
}

SteadyStateResult steady_state(const HermitianOperator& h,
                               const std::vector<JumpOperator>& jumps,
                               const SteadyStateOptions& opts) {
  const Eigen::Index n = h.dim();
  if (n < 1) throw std::invalid_argument("steady_state: empty Hamiltonian");
  if (jumps.empty()) throw std::invalid_argument("steady_state: no dissipation channels");

  SteadyStateResult result;
  if (n <= opts.nullspace_max_dim) {
    result.state = steady_state_nullspace(h, jumps, opts);
    result.method = "nullspace";
    if (n <= opts.spectrum_check_dim) {
      result.gap = spectral_gap(h, jumps);
      if (*result.gap <= opts.gap_tol)
        throw NonUniqueSteadyState("steady_state: generator gap " +
                                   std::to_string(*result.gap) + " is below gap_tol");
    } else {
      DensityMatrix other = steady_state_relaxation(
          h, jumps, {random_state(n, SplitMix64(opts.seed).split(0).next())}, opts);
      result.cross_agreement = (result.state.mat - other.mat).norm();
    }
  } else {
    result.state = steady_state_relaxation(
        h, jumps, {random_state(n, SplitMix64(opts.seed).split(0).next())}, opts);
    result.method = "relaxation";
    DensityMatrix other = steady_state_relaxation(
        h, jumps, {random_state(n, SplitMix64(opts.seed).split(1).next())}, opts);
    result.cross_agreement = (result.state.mat - other.mat).norm();
  }
  if (result.cross_agreement && *result.cross_agreement > opts.uniqueness_tol)
    throw NonUniqueSteadyState("steady_state: independent solutions differ by " +
                               std::to_string(*result.cross_agreement));
  result.residual = residual_of(result.state, h, jumps);
  if (result.residual > opts.residual_tol)
    throw NotConverged("steady_state: residual " + std::to_string(result.residual) +
                       " above tolerance");
  return result;
}

}  // namespace qbat
