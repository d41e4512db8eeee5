#include "qbat/workmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbat {

namespace {

constexpr double kEigClip = 1e-9;

// Eigenvalues of rho ascending, with the matching eigenvector columns.
std::pair<RealVector, Matrix> state_eig(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("workmetrics: state eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

// Indices ordering p descending; stable so exact ties keep ascending order.
std::vector<Eigen::Index> descending_order(const RealVector& p) {
  std::vector<Eigen::Index> idx(p.size());
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&p](Eigen::Index a, Eigen::Index b) { return p(a) > p(b); });
  return idx;
}

RealVector clipped(const RealVector& p, const char* who) {
  if (p.minCoeff() < -kEigClip)
    throw std::invalid_argument(std::string(who) + ": population below the -1e-9 clip");
  return p.cwiseMax(0.0);
}

double entropy_of(const RealVector& p) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < p.size(); ++k)
    if (p(k) > 0.0) s -= p(k) * std::log(p(k));
  return s;
}

RealVector gibbs_populations(const RealVector& energies, double beta) {
  const double shift = (-beta * energies.array()).maxCoeff();
  RealVector w = (-beta * energies.array() - shift).exp();
  return w / w.sum();
}

}  // namespace

DensityMatrix passive_state(const DensityMatrix& rho, const SpectralDecomposition& spec) {
  if (rho.dim() != spec.dim())
    throw std::invalid_argument("passive_state: dimension mismatch");
  auto [p, _] = state_eig(rho);
  RealVector pc = clipped(p, "passive_state");
  pc /= pc.sum();
  const auto order = descending_order(pc);
  Matrix sigma = Matrix::Zero(rho.dim(), rho.dim());
  for (Eigen::Index b = 0; b < rho.dim(); ++b)
    sigma += pc(order[b]) * spec.states.col(b) * spec.states.col(b).adjoint();
  return {0.5 * (sigma + sigma.adjoint())};
}

double ergotropy(const DensityMatrix& rho, const SpectralDecomposition& spec) {
  if (rho.dim() != spec.dim()) throw std::invalid_argument("ergotropy: dimension mismatch");
  const Eigen::Index n = rho.dim();
  auto [p, psi] = state_eig(rho);
  const auto order = descending_order(p);

  const Matrix hmat = spec.states * spec.energies.asDiagonal() * spec.states.adjoint();
  const double mean_energy = (hmat * rho.mat).trace().real();
  double passive_energy = 0.0;
  for (Eigen::Index b = 0; b < n; ++b) passive_energy += spec.energies(b) * p(order[b]);
  const double w1 = mean_energy - passive_energy;

  // Independent route: sum_{a,b} (E_b - E_a) p_a |<psi_a|chi_b>|^2 with a
  // enumerating populations descending against energies ascending.
  const Matrix overlap = spec.states.adjoint() * psi;
  double w2 = 0.0;
  for (Eigen::Index a = 0; a < n; ++a) {
    const double pa = p(order[a]);
    for (Eigen::Index b = 0; b < n; ++b)
      w2 += (spec.energies(b) - spec.energies(a)) * pa * std::norm(overlap(b, order[a]));
  }
  if (std::abs(w1 - w2) > 1e-9)
    throw std::runtime_error("ergotropy: pairing and double-sum routes disagree by " +
                             std::to_string(std::abs(w1 - w2)));
  return w1;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  auto [p, _] = state_eig(rho);
  return entropy_of(clipped(p, "von_neumann_entropy"));
}

DensityMatrix gibbs_state(const SpectralDecomposition& spec, double beta) {
  if (!std::isfinite(beta)) throw std::invalid_argument("gibbs_state: beta must be finite");
  const RealVector p = gibbs_populations(spec.energies, beta);
  Matrix m = spec.states * p.asDiagonal() * spec.states.adjoint();
  return {0.5 * (m + m.adjoint())};
}

double entropy_matched_beta(const DensityMatrix& rho, const SpectralDecomposition& spec) {
  if (rho.dim() != spec.dim())
    throw std::invalid_argument("entropy_matched_beta: dimension mismatch");
  const Eigen::Index n = rho.dim();
  const double s_target = von_neumann_entropy(rho);
  if (s_target >= std::log(static_cast<double>(n)) - 1e-12) return 0.0;

  const double e_lo = spec.energies.minCoeff();
  const double e_hi = spec.energies.maxCoeff();
  const double scale = std::max(std::abs(e_lo), std::abs(e_hi));
  if (e_hi - e_lo <= 1e-12 * std::max(1.0, scale))
    throw std::domain_error("entropy_matched_beta: fully degenerate spectrum");

  const double beta_max = 1e6 / scale;
  auto s_of = [&](double beta) { return entropy_of(gibbs_populations(spec.energies, beta)); };
  if (s_target < s_of(beta_max))
    throw std::domain_error("entropy_matched_beta: target entropy below the attainable floor");

  double lo = 0.0, hi = beta_max;  // S(lo) >= target >= S(hi), S decreasing
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (s_of(mid) >= s_target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double w_bound(const DensityMatrix& rho, const SpectralDecomposition& spec) {
  const double beta_bar = entropy_matched_beta(rho, spec);
  const RealVector p = gibbs_populations(spec.energies, beta_bar);
  const Matrix hmat = spec.states * spec.energies.asDiagonal() * spec.states.adjoint();
  const double mean_energy = (hmat * rho.mat).trace().real();
  return mean_energy - spec.energies.dot(p);
}

RealVector occupations(const DensityMatrix& rho, const SpectralDecomposition& spec) {
  if (rho.dim() != spec.dim()) throw std::invalid_argument("occupations: dimension mismatch");
  return (spec.states.adjoint() * rho.mat * spec.states).diagonal().real();
}

std::pair<double, double> charging_power(const std::vector<double>& times,
                                         const std::vector<double>& values,
                                         double saturation) {
  if (times.size() != values.size() || times.empty())
    throw std::invalid_argument("charging_power: times and values must match and be non-empty");
  if (saturation <= 0) throw std::invalid_argument("charging_power: saturation must be positive");
  const double threshold = 0.99 * saturation;
  std::size_t k = 0;
  while (k < values.size() && values[k] < threshold) ++k;
  if (k == values.size()) {
    const double top = *std::max_element(values.begin(), values.end());
    throw NotConverged("charging_power: trace reached only " +
                       std::to_string(top / saturation) + " of saturation");
  }
  double tau;
  if (k == 0) {
    tau = times[0];
    if (tau <= 0)
      throw std::invalid_argument("charging_power: trace starts at the threshold");
  } else {
    const double dv = values[k] - values[k - 1];
    tau = dv > 0 ? times[k - 1] + (threshold - values[k - 1]) * (times[k] - times[k - 1]) / dv
                 : times[k];
  }
  return {tau, threshold / tau};
}

ErgotropyReport make_report(const DensityMatrix& rho, const SpectralDecomposition& spec) {
  ErgotropyReport report;
  report.occupations = occupations(rho, spec);
  report.ergotropy = ergotropy(rho, spec);
  report.mean_energy = spec.energies.dot(report.occupations);
  report.passive_energy = report.mean_energy - report.ergotropy;
  try {
    const double beta_bar = entropy_matched_beta(rho, spec);
    report.beta_bar = beta_bar;
    const RealVector p = gibbs_populations(spec.energies, beta_bar);
    report.w_bound = report.mean_energy - spec.energies.dot(p);
  } catch (const std::domain_error&) {
    // No entropy-matched Gibbs state; the bound is reported as absent.
  }
  return report;
}

}  // namespace qbat
