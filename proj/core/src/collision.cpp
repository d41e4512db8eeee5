#include "qbat/collision.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "qbat/lattice.hpp"
#include "qbat/workmetrics.hpp"

namespace qbat {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFixedPointTol = 1e-10;

double effective_tau(const CollisionSpec& spec) {
  return spec.tau_c > 0 ? spec.tau_c : (kPi / 4.0) / spec.coupling;
}

// exp(-i tau H) of the Hermitian two-qubit generator.
Matrix unitary_of(const CollisionSpec& spec) {
  const double w = spec.omega, g = spec.coupling, tau = effective_tau(spec);
  Matrix htot = Matrix::Zero(4, 4);
  // Composite index 2*battery + ancilla; 0 = both ground, 3 = both excited.
  htot(0, 0) = -w;
  htot(3, 3) = w;
  htot(0, 3) = g;
  htot(3, 0) = g;
  Eigen::SelfAdjointEigenSolver<Matrix> es(htot);
  const Vector phases =
      (Complex(0.0, -tau) * es.eigenvalues().cast<Complex>().array()).exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix ancilla_gibbs(const CollisionSpec& spec) {
  const double qe = 1.0 / (1.0 + std::exp(spec.beta * spec.omega));
  Matrix w = Matrix::Zero(2, 2);
  w(0, 0) = 1.0 - qe;
  w(1, 1) = qe;
  return w;
}

}  // namespace

double CollisionSpec::g_tau() const { return coupling * effective_tau(*this); }

void CollisionSpec::validate() const {
  if (omega <= 0) throw std::invalid_argument("collision: omega must be positive");
  if (coupling <= 0) throw std::invalid_argument("collision: coupling must be positive");
  if (beta < 0) throw std::invalid_argument("collision: beta must be non-negative");
  if (tau_c < 0) throw std::invalid_argument("collision: tau_c must be non-negative");
  if (max_collisions < 1) throw std::invalid_argument("collision: max_collisions must be >= 1");
}

DensityMatrix collision_step(const DensityMatrix& rho, const CollisionSpec& spec) {
  spec.validate();
  if (rho.dim() != 2) throw std::invalid_argument("collision_step: battery must be a qubit");
  const Matrix u = unitary_of(spec);
  const Matrix joint =
      u * Eigen::kroneckerProduct(rho.mat, ancilla_gibbs(spec)) * u.adjoint();
  Matrix out = Matrix::Zero(2, 2);
  for (int b = 0; b < 2; ++b)
    for (int bp = 0; bp < 2; ++bp)
      for (int a = 0; a < 2; ++a) out(b, bp) += joint(2 * b + a, 2 * bp + a);
  return {0.5 * (out + out.adjoint())};
}

CollisionRun iterate_to_fixed_point(const CollisionSpec& spec) {
  spec.validate();
  const double phase = std::fmod(spec.g_tau(), kPi);
  if (std::min(phase, kPi - phase) < 1e-12)
    throw std::invalid_argument("collision: g*tau_c is a multiple of pi (trivial swap)");

  SpectralDecomposition battery;
  battery.energies = RealVector(2);
  battery.energies << -spec.omega / 2.0, spec.omega / 2.0;
  battery.states = Matrix::Identity(2, 2);

  CollisionRun run;
  DensityMatrix rho{Matrix::Zero(2, 2)};
  rho.mat(0, 0) = 1.0;  // battery starts in its ground state
  for (int k = 1; k <= spec.max_collisions; ++k) {
    DensityMatrix next = collision_step(rho, spec);
    const double delta = (next.mat - rho.mat).norm();
    rho = std::move(next);
    run.steps.push_back({k, rho.mat(1, 1).real(), ergotropy(rho, battery), delta});
    run.collisions = k;
    if (delta < kFixedPointTol) {
      run.state = rho;
      run.ergotropy = run.steps.back().ergotropy;
      return run;
    }
  }
  throw NotConverged("collision: no fixed point within " +
                     std::to_string(spec.max_collisions) + " collisions (last delta " +
                     std::to_string(run.steps.back().delta) + ")");
}

}  // namespace qbat
