#include "qbat/scenarios.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <set>
#include <thread>

#include "qbat/evolve.hpp"
#include "qbat/rng.hpp"

namespace qbat {

namespace {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct SweepPlan {
  bool graphene = false;
  bool dephasing = false;
  std::vector<double> parameters;  // disorder widths, or gamma_d values
};

RealizationResult run_cell(const RunConfig& cfg, const SweepPlan& plan, int p, int r) {
  RealizationResult cell;
  cell.parameter = plan.parameters[p];
  cell.realization = r;
  cell.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(r));

  LatticeSpec lattice;
  lattice.kind = plan.graphene ? LatticeKind::honeycomb : LatticeKind::chain;
  lattice.sites = cfg.sites;
  lattice.cells_x = cfg.cells_x;
  lattice.cells_y = cfg.cells_y;
  lattice.hopping = cfg.hopping;
  auto [h_clean, bonds] = plan.graphene ? build_honeycomb(lattice) : build_chain(lattice);
  const double width = plan.dephasing ? cfg.disorder.front() : plan.parameters[p];
  const HermitianOperator h = add_disorder(h_clean, width, cell.seed);
  const int n = static_cast<int>(h.dim());

  std::vector<JumpOperator> jumps;
  jumps.reserve(bonds.size() + (plan.dephasing ? n : 0));
  for (const Bond& bond : bonds)
    jumps.push_back(bond_jump(bond.i, bond.j, cfg.phi, n).with_rate(cfg.gamma));
  if (plan.dephasing && plan.parameters[p] > 0)
    for (int j = 0; j < n; ++j)
      jumps.push_back(dephasing_jump(j, n).with_rate(plan.parameters[p]));

  const SpectralDecomposition spec = eig(h);
  cell.energies = spec.energies;

  try {
    const SteadyStateResult ss = steady_state(h, jumps);
    cell.report = make_report(ss.state, spec);

    const DensityMatrix rho0 = passive_state(ss.state, spec);
    const std::vector<double> grid =
        time_grid(cfg.t_max / cfg.gamma, cfg.gamma, cfg.points, cfg.dt / cfg.gamma);
    const Trajectory traj = evolve(rho0, h, jumps, grid);

    cell.trace.saturation = cell.report.ergotropy;
    cell.trace.times.reserve(grid.size());
    cell.trace.ergotropy.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      cell.trace.times.push_back(grid[k] * cfg.gamma);
      cell.trace.ergotropy.push_back(ergotropy({traj.states[k]}, spec));
    }
    try {
      const auto [tau99, power] =
          charging_power(cell.trace.times, cell.trace.ergotropy, cell.trace.saturation);
      cell.trace.tau99 = tau99;
      cell.trace.power = power;
    } catch (const NotConverged&) {
      // The trace did not reach 99% of saturation within t_max; not a solver error.
    }
  } catch (const std::exception& e) {
    cell.error = e.what();
  }
  return cell;
}

ScenarioReport run_sweep(const RunConfig& cfg, const SweepPlan& plan) {
  const int np = static_cast<int>(plan.parameters.size());
  const int nr = cfg.realizations;
  std::vector<RealizationResult> cells(static_cast<std::size_t>(np) * nr);

  std::vector<std::pair<int, int>> todo;
  todo.reserve(cells.size());
  for (int p = 0; p < np; ++p)
    for (int r = 0; r < nr; ++r) todo.emplace_back(p, r);

  const int workers = std::max(1, std::min(cfg.workers, static_cast<int>(todo.size())));
  if (workers == 1) {
    for (const auto& [p, r] : todo)
      cells[static_cast<std::size_t>(p) * nr + r] = run_cell(cfg, plan, p, r);
  } else {
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
      for (std::size_t k = next.fetch_add(1); k < todo.size(); k = next.fetch_add(1)) {
        const auto& [p, r] = todo[k];
        cells[static_cast<std::size_t>(p) * nr + r] = run_cell(cfg, plan, p, r);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
  }

  ScenarioReport report;
  report.config = cfg;
  report.realizations = std::move(cells);
  report.aggregates.reserve(np);
  for (int p = 0; p < np; ++p) {
    ParameterAggregate agg;
    agg.parameter = plan.parameters[p];
    std::vector<const RealizationResult*> ok;
    for (int r = 0; r < nr; ++r) {
      const auto& cell = report.realizations[static_cast<std::size_t>(p) * nr + r];
      if (cell.error.empty()) ok.push_back(&cell);
    }
    agg.count = static_cast<int>(ok.size());
    if (agg.count == 0) {
      report.aggregates.push_back(std::move(agg));
      continue;
    }
    auto mean_stderr = [](const std::vector<double>& xs) {
      const double n = static_cast<double>(xs.size());
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= n;
      if (xs.size() < 2) return std::pair{mean, 0.0};
      double ss = 0.0;
      for (double x : xs) ss += (x - mean) * (x - mean);
      return std::pair{mean, std::sqrt(ss / (n - 1.0) / n)};
    };
    std::vector<double> e_ss, wb, tau, pow_;
    for (const auto* cell : ok) {
      e_ss.push_back(cell->report.ergotropy);
      if (cell->report.w_bound) wb.push_back(*cell->report.w_bound);
      if (cell->trace.tau99) tau.push_back(*cell->trace.tau99);
      if (cell->trace.power) pow_.push_back(*cell->trace.power);
    }
    std::tie(agg.e_ss_mean, agg.e_ss_stderr) = mean_stderr(e_ss);
    if (!wb.empty()) agg.w_bound_mean = mean_stderr(wb).first;
    if (!tau.empty()) agg.tau99_mean = mean_stderr(tau).first;
    if (!pow_.empty()) std::tie(agg.power_mean, agg.power_stderr) = mean_stderr(pow_);
    agg.trace_times = ok.front()->trace.times;
    const std::size_t npts = agg.trace_times.size();
    agg.trace_ergotropy_mean.assign(npts, 0.0);
    agg.trace_ratio_mean.assign(npts, 0.0);
    for (const auto* cell : ok)
      for (std::size_t k = 0; k < npts; ++k) {
        agg.trace_ergotropy_mean[k] += cell->trace.ergotropy[k] / agg.count;
        if (cell->trace.saturation > 0)
          agg.trace_ratio_mean[k] += cell->trace.ergotropy[k] / cell->trace.saturation / agg.count;
      }
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

}  // namespace

void RunConfig::validate() const {
  static const std::set<std::string> known = {"chain", "graphene", "dephasing", "collision"};
  if (!known.count(scenario)) throw std::invalid_argument("config: unknown scenario " + scenario);
  if (sites < 2) throw std::invalid_argument("config: sites must be >= 2");
  if (cells_x < 1 || cells_y < 1) throw std::invalid_argument("config: cells must be >= 1");
  if (hopping == 0) throw std::invalid_argument("config: hopping must be non-zero");
  if (gamma <= 0) throw std::invalid_argument("config: gamma must be positive");
  if (!std::isfinite(phi)) throw std::invalid_argument("config: phi must be finite");
  if (disorder.empty()) throw std::invalid_argument("config: disorder list must be non-empty");
  for (double w : disorder)
    if (w < 0 || !std::isfinite(w))
      throw std::invalid_argument("config: disorder widths must be non-negative");
  if (gamma_d.empty()) throw std::invalid_argument("config: gamma_d list must be non-empty");
  for (double g : gamma_d)
    if (g < 0 || !std::isfinite(g))
      throw std::invalid_argument("config: gamma_d values must be non-negative");
  if (realizations < 1) throw std::invalid_argument("config: realizations must be >= 1");
  if (t_max <= 0) throw std::invalid_argument("config: t_max must be positive");
  if (dt < 0) throw std::invalid_argument("config: dt must be non-negative");
  if (points < 2) throw std::invalid_argument("config: points must be >= 2");
  if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
  if (out.empty()) throw std::invalid_argument("config: output prefix must be non-empty");
  CollisionSpec collision{omega, beta, coupling, tau_c, max_collisions};
  collision.validate();
}

bool ScenarioReport::has_solver_errors() const {
  for (const auto& cell : realizations)
    if (!cell.error.empty()) return true;
  return false;
}

std::vector<double> time_grid(double t_max, double gamma, int points, double dt) {
  if (t_max <= 0) throw std::invalid_argument("time_grid: t_max must be positive");
  if (gamma <= 0) throw std::invalid_argument("time_grid: gamma must be positive");
  std::vector<double> grid{0.0};
  if (dt > 0) {
    for (int k = 1; k * dt <= t_max * (1 + 1e-12); ++k) grid.push_back(k * dt);
    if (grid.size() < 2) throw std::invalid_argument("time_grid: dt exceeds t_max");
    return grid;
  }
  if (points < 2) throw std::invalid_argument("time_grid: points must be >= 2");
  const double t0 = 0.01 / gamma;
  if (t_max <= t0) throw std::invalid_argument("time_grid: t_max must exceed 0.01/gamma");
  const double ratio = t_max / t0;
  grid.reserve(points + 1);
  for (int k = 0; k < points; ++k)
    grid.push_back(t0 * std::pow(ratio, static_cast<double>(k) / (points - 1)));
  grid.back() = t_max;
  return grid;
}

ScenarioReport run_chain(const RunConfig& cfg) {
  cfg.validate();
  SweepPlan plan;
  plan.parameters = cfg.disorder;
  return run_sweep(cfg, plan);
}

ScenarioReport run_graphene(const RunConfig& cfg) {
  cfg.validate();
  SweepPlan plan;
  plan.graphene = true;
  plan.parameters = cfg.disorder;
  return run_sweep(cfg, plan);
}

ScenarioReport run_dephasing(const RunConfig& cfg) {
  cfg.validate();
  SweepPlan plan;
  plan.dephasing = true;
  plan.parameters = cfg.gamma_d;
  return run_sweep(cfg, plan);
}

ScenarioReport run_collision(const RunConfig& cfg) {
  cfg.validate();
  ScenarioReport report;
  report.config = cfg;
  CollisionSpec spec{cfg.omega, cfg.beta, cfg.coupling, cfg.tau_c, cfg.max_collisions};
  report.collision = iterate_to_fixed_point(spec);
  return report;
}

ScenarioReport run_scenario(const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport report;
  if (cfg.scenario == "chain") report = run_chain(cfg);
  else if (cfg.scenario == "graphene") report = run_graphene(cfg);
  else if (cfg.scenario == "dephasing") report = run_dephasing(cfg);
  else report = run_collision(cfg);
  report.timestamp = utc_timestamp();
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace qbat
