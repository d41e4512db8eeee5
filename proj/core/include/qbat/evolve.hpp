#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbat/dissipation.hpp"
#include "qbat/types.hpp"

namespace qbat {

/// Density-matrix snapshots on a time grid.
struct Trajectory {
  std::vector<double> times;
  std::vector<Matrix> states;
};

struct EvolveOptions {
  double abs_tol = 1e-9;  // per-step absolute error (Frobenius)
  double max_step = 0.0;  // 0 = auto: 0.1 / max jump rate (0.1/|H| scale if no jumps)
};

/// Adaptive Dormand-Prince RK45 on the operator-form rhs. The grid must be
/// strictly increasing and start at 0; a snapshot is stored per grid time.
Trajectory evolve(const DensityMatrix& rho0, const HermitianOperator& h,
                  const std::vector<JumpOperator>& jumps,
                  const std::vector<double>& grid, const EvolveOptions& opts = {});

/// Dense-propagator route: exp(Liouvillian * dt) applied to vec(rho) per grid
/// interval. Restricted to N <= 24; serves as the cross-check oracle.
Trajectory evolve_propagator(const DensityMatrix& rho0, const HermitianOperator& h,
                             const std::vector<JumpOperator>& jumps,
                             const std::vector<double>& grid);

struct SteadyStateOptions {
  double residual_tol = 1e-8;    // required ||rhs(rho_ss)||_F
  double uniqueness_tol = 1e-6;  // cross-solution Frobenius agreement (N > spectrum_check_dim)
  double gap_tol = 1e-8;         // required second-smallest |Re lambda| (N <= spectrum_check_dim)
  double clip_tol = 1e-9;        // eigenvalues in [-clip_tol, 0) clipped; beyond is an error
  int spectrum_check_dim = 16;   // full-spectrum uniqueness check up to this N
  int nullspace_max_dim = 40;    // dense least-squares solver up to this N
  std::uint64_t seed = 0x51ab5eedULL;  // random initial states of the relaxation solver
};

struct SteadyStateResult {
  DensityMatrix state;
  double residual = 0.0;                  // ||rhs(state)||_F
  std::string method;                     // "nullspace" | "relaxation"
  std::optional<double> gap;              // second-smallest |Re lambda|, when computed
  std::optional<double> cross_agreement;  // Frobenius distance between independent solutions
};

/// Unique stationary state of the generator. N <= nullspace_max_dim uses the
/// dense least-squares null space with an appended trace row; larger N relaxes
/// vec(rho) by damped implicit time stepping of the sparse generator until
/// ||rhs||_F converges. Uniqueness: full-spectrum gap check for
/// N <= spectrum_check_dim, otherwise agreement of two independently produced
/// solutions (second solver or second random initial state) within
/// uniqueness_tol. The returned state is Hermitized, eigenvalue-clipped at
/// -clip_tol, and renormalized; failing the residual or positivity gate throws.
SteadyStateResult steady_state(const HermitianOperator& h,
                               const std::vector<JumpOperator>& jumps,
                               const SteadyStateOptions& opts = {});

/// Dense null-space solver only (N <= 40), without uniqueness checks.
DensityMatrix steady_state_nullspace(const HermitianOperator& h,
                                     const std::vector<JumpOperator>& jumps,
                                     const SteadyStateOptions& opts = {});

/// Long-time relaxation solver only: implicit (backward-Euler) pseudo-time
/// steps (I - h*Liouvillian)^{-1} with geometrically growing h, certified by
/// the operator-form residual. Deterministic given rho0.
DensityMatrix steady_state_relaxation(const HermitianOperator& h,
                                      const std::vector<JumpOperator>& jumps,
                                      const DensityMatrix& rho0,
                                      const SteadyStateOptions& opts = {});

}  // namespace qbat
