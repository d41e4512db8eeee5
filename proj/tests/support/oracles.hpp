#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is deliberately naive: different algorithms, no shared
// code paths with core/, so agreement is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "qbat/dissipation.hpp"
#include "qbat/lattice.hpp"
#include "qbat/rng.hpp"
#include "qbat/types.hpp"

namespace oracle {

inline qbat::Matrix random_complex(Eigen::Index n, qbat::SplitMix64& rng) {
  qbat::Matrix a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      a(i, j) = qbat::Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return a;
}

inline qbat::HermitianOperator random_hermitian(Eigen::Index n, qbat::SplitMix64& rng) {
  const qbat::Matrix a = random_complex(n, rng);
  return {0.5 * (a + a.adjoint())};
}

inline qbat::DensityMatrix random_density(Eigen::Index n, qbat::SplitMix64& rng) {
  const qbat::Matrix a = random_complex(n, rng);
  qbat::Matrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return {0.5 * (rho + rho.adjoint())};
}

// Ergotropy by brute force: minimize the energy over every permutation of
// the state's spectrum against the Hamiltonian's spectrum.
inline double exhaustive_ergotropy(const qbat::DensityMatrix& rho,
                                   const qbat::SpectralDecomposition& spec) {
  const Eigen::Index n = rho.dim();
  if (n > 7) throw std::invalid_argument("exhaustive_ergotropy: factorial blowup beyond 7");
  Eigen::SelfAdjointEigenSolver<qbat::Matrix> es(rho.mat);
  const qbat::RealVector p = es.eigenvalues();
  const qbat::Matrix h = spec.states * spec.energies.asDiagonal() * spec.states.adjoint();
  const double mean = (h * rho.mat).trace().real();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double e = 0.0;
    for (Eigen::Index b = 0; b < n; ++b) e += p(perm[b]) * spec.energies(b);
    best = std::min(best, e);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return mean - best;
}

// Stationary state of a dimension-2 problem straight from the kernel of the
// dense generator, via full-pivot LU.
inline qbat::Matrix kernel_steady_state(const qbat::HermitianOperator& h,
                                        const std::vector<qbat::JumpOperator>& jumps) {
  const qbat::Matrix l = qbat::build_liouvillian(h, jumps).mat;
  Eigen::FullPivLU<qbat::Matrix> lu(l);
  lu.setThreshold(1e-9);
  const qbat::Matrix kernel = lu.kernel();
  if (kernel.cols() != 1)
    throw std::runtime_error("kernel_steady_state: kernel dimension is not 1");
  qbat::Matrix rho = qbat::unvectorize(kernel.col(0), h.dim());
  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  return rho;
}

// Clean-chain reduction: with uniform bond dissipation the momentum-mode
// populations close on themselves, with transfer rates
// T(k -> k') = (4 gamma / L) (1 - cos k)(1 + cos k').
struct ClassicalChainTrace {
  std::vector<double> times;
  std::vector<double> ergotropy;
};

inline ClassicalChainTrace classical_chain_trace(int sites, double hopping, double gamma,
                                                 const std::vector<double>& grid) {
  const int L = sites;
  Eigen::VectorXd energy(L), emit(L), absorb(L);
  for (int m = 0; m < L; ++m) {
    const double k = 2.0 * M_PI * m / L;
    energy(m) = 2.0 * hopping * std::cos(k);
    emit(m) = 1.0 - std::cos(k);
    absorb(m) = 1.0 + std::cos(k);
  }
  Eigen::MatrixXd rates(L, L);
  for (int to = 0; to < L; ++to)
    for (int from = 0; from < L; ++from)
      rates(to, from) = 4.0 * gamma / L * emit(from) * absorb(to);
  Eigen::VectorXd loss = rates.colwise().sum().transpose();

  // Populations start concentrated in the lowest-energy mode (k = pi).
  Eigen::VectorXd p = Eigen::VectorXd::Zero(L);
  Eigen::Index lowest;
  energy.minCoeff(&lowest);
  p(lowest) = 1.0;

  std::vector<int> order(L);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&energy](int a, int b) { return energy(a) < energy(b); });
  auto ergotropy_of = [&](const Eigen::VectorXd& pop) {
    std::vector<double> sorted(pop.data(), pop.data() + L);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double mean = pop.dot(energy), passive = 0.0;
    for (int b = 0; b < L; ++b) passive += sorted[b] * energy(order[b]);
    return mean - passive;
  };
  auto deriv = [&](const Eigen::VectorXd& pop) -> Eigen::VectorXd {
    return rates * pop - loss.cwiseProduct(pop);
  };

  ClassicalChainTrace out;
  out.times = grid;
  out.ergotropy.reserve(grid.size());
  double t = 0.0;
  const double h = 0.005 / gamma;
  for (double t_goal : grid) {
    while (t < t_goal) {
      const double dt = std::min(h, t_goal - t);
      const Eigen::VectorXd k1 = deriv(p);
      const Eigen::VectorXd k2 = deriv(p + 0.5 * dt * k1);
      const Eigen::VectorXd k3 = deriv(p + 0.5 * dt * k2);
      const Eigen::VectorXd k4 = deriv(p + dt * k3);
      p += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t += dt;
    }
    out.ergotropy.push_back(ergotropy_of(p));
  }
  return out;
}

}  // namespace oracle
