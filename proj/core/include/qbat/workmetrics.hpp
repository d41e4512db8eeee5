#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qbat/lattice.hpp"
#include "qbat/types.hpp"

namespace qbat {

/// Steady-state work metrics of one state against one Hamiltonian.
struct ErgotropyReport {
  double ergotropy = 0.0;
  double mean_energy = 0.0;
  double passive_energy = 0.0;
  std::optional<double> w_bound;  // absent when entropy matching has no solution
  std::optional<double> beta_bar;
  RealVector occupations;  // ascending-energy order
};

/// Ergotropy-vs-time record of one charging run.
struct ChargingTrace {
  std::vector<double> times;  // units 1/gamma
  std::vector<double> ergotropy;
  double saturation = 0.0;  // steady-state ergotropy
  std::optional<double> tau99;
  std::optional<double> power;
};

/// sigma = sum_b p_b |chi_b><chi_b| with populations sorted descending paired
/// against energies ascending. Stable sorts keep the output reproducible
/// under ties.
DensityMatrix passive_state(const DensityMatrix& rho, const SpectralDecomposition& spec);

/// Tr[H(rho - sigma_rho)]. Evaluated both by sorted pairing and by the
/// double-sum form sum_{a,b} (E_b - E_a) p_a |<psi_a|chi_b>|^2; the two are
/// required to agree within 1e-9.
double ergotropy(const DensityMatrix& rho, const SpectralDecomposition& spec);

/// -sum p ln p in nats, with eigenvalues in [-1e-9, 0) clipped to 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Populations proportional to e^{-beta E} in the H eigenbasis (max-shifted).
DensityMatrix gibbs_state(const SpectralDecomposition& spec, double beta);

/// The beta with S(gibbs(beta)) = S(rho), by bisection on [0, 1e6/|H|].
/// S(rho) = ln N returns 0 exactly; entropy below the bracket floor or a
/// fully degenerate spectrum throws std::domain_error.
double entropy_matched_beta(const DensityMatrix& rho, const SpectralDecomposition& spec);

/// Tr[H rho] - Tr[H gibbs(beta_bar)].
double w_bound(const DensityMatrix& rho, const SpectralDecomposition& spec);

/// n_b = <chi_b|rho|chi_b>, ascending-energy order.
RealVector occupations(const DensityMatrix& rho, const SpectralDecomposition& spec);

/// First time the trace reaches 0.99 * saturation, linearly interpolated
/// between bracketing grid points, and P = 0.99 * saturation / tau99.
/// Throws NotConverged (reporting the maximum attained fraction) if the
/// threshold is never reached.
std::pair<double, double> charging_power(const std::vector<double>& times,
                                         const std::vector<double>& values,
                                         double saturation);

/// Full per-state report; w_bound/beta_bar left empty when entropy matching
/// reports no solution.
ErgotropyReport make_report(const DensityMatrix& rho, const SpectralDecomposition& spec);

}  // namespace qbat
