#pragma once

#include <vector>

#include "qbat/types.hpp"

namespace qbat {

/// Repeated-interaction charging of a qubit battery. Battery and ancilla
/// share the splitting omega (H = diag(-omega/2, +omega/2) with index 0 the
/// ground state); ancillas arrive in the Gibbs state at beta; the coupling is
/// the double raising/lowering exchange V = g(s+ s+ + s- s-), which commutes
/// with H_0 + H_A for H_0 = -H_B and drives the battery toward the
/// population-inverted state pi ~ e^{+beta H_B}.
struct CollisionSpec {
  double omega = 1.0;
  double beta = 1.0;
  double coupling = 1.0;
  double tau_c = 0.0;  // 0 = default pi/4 / coupling (g tau_c = pi/4)
  int max_collisions = 50;

  double g_tau() const;
  void validate() const;
};

struct CollisionStepRecord {
  int index = 0;
  double excited_population = 0.0;
  double ergotropy = 0.0;
  double delta = 0.0;  // Frobenius distance to the previous state
};

struct CollisionRun {
  DensityMatrix state;
  double ergotropy = 0.0;
  int collisions = 0;
  std::vector<CollisionStepRecord> steps;
};

/// One collision: Tr_A[U (rho kron omega_beta) U^dag] with
/// U = exp(-i tau_c (H_B + H_A + V)).
DensityMatrix collision_step(const DensityMatrix& rho, const CollisionSpec& spec);

/// Iterate collision_step from the battery ground state until successive
/// states differ by < 1e-10 (Frobenius), cap max_collisions. Throws
/// NotConverged past the cap and std::invalid_argument when g*tau_c is a
/// multiple of pi (trivial swap).
CollisionRun iterate_to_fixed_point(const CollisionSpec& spec);

}  // namespace qbat
