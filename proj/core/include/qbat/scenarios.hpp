#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbat/collision.hpp"
#include "qbat/workmetrics.hpp"

namespace qbat {

inline constexpr const char* kVersion = "0.1.0";

enum class OutputFormat { csv, json };

/// Everything one run needs; mirrors the CLI flags and the config file keys.
struct RunConfig {
  std::string scenario = "chain";  // chain | graphene | dephasing | collision
  int sites = 16;
  int cells_x = 4;
  int cells_y = 4;
  double hopping = 1.0;
  double gamma = 1.0;
  std::vector<double> gamma_d = {0.0};  // swept by the dephasing scenario
  double phi = 0.0;                     // eta = e^{i phi}
  std::vector<double> disorder = {0.0};
  int realizations = 1;
  double t_max = 20.0;  // units 1/gamma
  double dt = 0.0;      // 0 = log-spaced grid (points entries after tau = 0.01/gamma)
  int points = 200;
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out = "report";
  OutputFormat format = OutputFormat::csv;
  // collision scenario
  double omega = 1.0;
  double beta = 1.0;
  double coupling = 1.0;
  double tau_c = 0.0;  // 0 = pi/4 / coupling
  int max_collisions = 50;

  void validate() const;  // throws std::invalid_argument
};

/// One (parameter, realization) cell of a sweep.
struct RealizationResult {
  double parameter = 0.0;  // disorder W, or gamma_d for the dephasing sweep
  int realization = 0;
  std::uint64_t seed = 0;
  ErgotropyReport report;
  ChargingTrace trace;
  RealVector energies;  // Hamiltonian spectrum of this realization
  std::string error;    // non-empty when a solver error was recorded
};

struct ParameterAggregate {
  double parameter = 0.0;
  int count = 0;  // realizations that completed without error
  double e_ss_mean = 0.0;
  double e_ss_stderr = 0.0;
  double w_bound_mean = 0.0;
  double power_mean = 0.0;
  double power_stderr = 0.0;
  double tau99_mean = 0.0;
  std::vector<double> trace_times;  // pointwise mean trace over realizations
  std::vector<double> trace_ergotropy_mean;
  std::vector<double> trace_ratio_mean;  // ergotropy / saturation
};

struct ScenarioReport {
  RunConfig config;
  std::vector<RealizationResult> realizations;  // sorted by (parameter index, realization)
  std::vector<ParameterAggregate> aggregates;
  std::optional<CollisionRun> collision;
  std::string timestamp;  // volatile metadata, excluded from determinism
  double wall_time_s = 0.0;

  bool has_solver_errors() const;
};

ScenarioReport run_chain(const RunConfig& config);
ScenarioReport run_graphene(const RunConfig& config);
ScenarioReport run_dephasing(const RunConfig& config);
ScenarioReport run_collision(const RunConfig& config);
ScenarioReport run_scenario(const RunConfig& config);  // dispatch on config.scenario

/// Strictly increasing grid starting at 0. dt > 0 gives uniform steps;
/// otherwise points log-spaced entries between 0.01/gamma and t_max.
std::vector<double> time_grid(double t_max, double gamma, int points, double dt);

/// CSV: <prefix>_sweep.csv plus one <prefix>_trace_<parameter>.csv per
/// parameter point, <prefix>_occupations.csv for graphene, and
/// <prefix>_collision.csv for collision runs. JSON: single <prefix>.json.
/// Numbers carry 12 significant digits in both formats.
void emit(const ScenarioReport& report, OutputFormat format, const std::string& path_prefix);

/// The JSON document emit writes; deterministic for identical configs except
/// for the timestamp/wall-time metadata.
std::string report_to_json(const ScenarioReport& report);

/// Read a JSON config file whose keys mirror the CLI flags.
RunConfig load_config(const std::string& path);

/// Round to 12 significant digits (the serialization contract).
double sig12(double x);

}  // namespace qbat
