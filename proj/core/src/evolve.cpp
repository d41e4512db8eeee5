#include "qbat/evolve.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace qbat {

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("evolve: empty time grid");
  if (grid.front() != 0.0) throw std::invalid_argument("evolve: grid must start at 0");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (grid[k] <= grid[k - 1])
      throw std::invalid_argument("evolve: grid must be strictly increasing");
}

double auto_max_step(const HermitianOperator& h, const std::vector<JumpOperator>& jumps) {
  double rate = 0.0;
  for (const auto& jump : jumps) rate = std::max(rate, jump.rate);
  if (rate <= 0.0) {
    // No dissipation: cap against the Hamiltonian scale (Gershgorin radius).
    double gersh = 0.0;
    for (Eigen::Index i = 0; i < h.dim(); ++i)
      gersh = std::max(gersh, h.mat.row(i).cwiseAbs().sum());
    rate = std::max(gersh, 1e-12);
  }
  return 0.1 / rate;
}

}  // namespace

Trajectory evolve(const DensityMatrix& rho0, const HermitianOperator& h,
                  const std::vector<JumpOperator>& jumps,
                  const std::vector<double>& grid, const EvolveOptions& opts) {
  check_grid(grid);
  const Eigen::Index n = h.dim();
  if (rho0.dim() != n) throw std::invalid_argument("evolve: state dimension mismatch");
  if (opts.abs_tol <= 0) throw std::invalid_argument("evolve: abs_tol must be positive");
  const double hmax = opts.max_step > 0 ? opts.max_step : auto_max_step(h, jumps);

  // Dormand-Prince 5(4) with the first-same-as-last property.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory out;
  out.times = grid;
  out.states.reserve(grid.size());

  Matrix y = rho0.mat;
  out.states.push_back(y);
  double t = 0.0;
  Matrix k1 = rhs(y, h, jumps);
  double step = hmax;
  Matrix k2, k3, k4, k5, k6, k7, y5;

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double t_goal = grid[g];
    while (t < t_goal) {
      const double dt = std::min({step, hmax, t_goal - t});
      k2 = rhs(y + dt * (a21 * k1), h, jumps);
      k3 = rhs(y + dt * (a31 * k1 + a32 * k2), h, jumps);
      k4 = rhs(y + dt * (a41 * k1 + a42 * k2 + a43 * k3), h, jumps);
      k5 = rhs(y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), h, jumps);
      k6 = rhs(y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), h, jumps);
      y5 = y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = rhs(y5, h, jumps);
      const double err =
          dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7).norm();
      if (err <= opts.abs_tol) {
        t += dt;
        y = y5;
        k1 = k7;  // FSAL
        const double grow = err > 0 ? 0.9 * std::pow(opts.abs_tol / err, 0.2) : 5.0;
        step = dt * std::clamp(grow, 0.2, 5.0);
      } else {
        step = dt * std::clamp(0.9 * std::pow(opts.abs_tol / err, 0.2), 0.2, 1.0);
        if (step < 1e-14 * std::max(1.0, t))
          throw NotConverged("evolve: step size underflow at t=" + std::to_string(t));
      }
    }
    out.states.push_back(y);
  }
  return out;
}

Trajectory evolve_propagator(const DensityMatrix& rho0, const HermitianOperator& h,
                             const std::vector<JumpOperator>& jumps,
                             const std::vector<double>& grid) {
  check_grid(grid);
  const Eigen::Index n = h.dim();
  if (rho0.dim() != n) throw std::invalid_argument("evolve_propagator: state dimension mismatch");
  if (n > 24) throw std::invalid_argument("evolve_propagator: restricted to N <= 24");
  const Matrix l = build_liouvillian(h, jumps).mat;
  Trajectory out;
  out.times = grid;
  out.states.reserve(grid.size());
  Vector x = vectorize(rho0.mat);
  out.states.push_back(rho0.mat);
  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double dt = grid[g] - grid[g - 1];
    x = (l * dt).exp() * x;
    out.states.push_back(unvectorize(x, n));
  }
  return out;
}

}  // namespace qbat
