#include <cstdio>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "qbat/scenarios.hpp"

namespace {

struct FlagSet {
  qbat::RunConfig values;
  std::string format = "csv";
  std::string config_path;
};

void add_common_flags(CLI::App* sub, FlagSet& flags) {
  auto& cfg = flags.values;
  sub->add_option("--sites", cfg.sites, "Chain length");
  sub->add_option("--cells-x", cfg.cells_x, "Honeycomb cells along x");
  sub->add_option("--cells-y", cfg.cells_y, "Honeycomb cells along y");
  sub->add_option("--hopping", cfg.hopping, "Hopping amplitude t");
  sub->add_option("--gamma", cfg.gamma, "Bond dissipation rate");
  sub->add_option("--gamma-d", cfg.gamma_d, "Dephasing rates (comma list)")->delimiter(',');
  sub->add_option("--phi", cfg.phi, "Bond phase, eta = e^{i phi}");
  sub->add_option("--disorder", cfg.disorder, "Disorder widths W (comma list)")->delimiter(',');
  sub->add_option("--realizations", cfg.realizations, "Disorder realizations per parameter");
  sub->add_option("--seed", cfg.seed, "Master seed");
  sub->add_option("--t-max", cfg.t_max, "Trace end time in units of 1/gamma");
  sub->add_option("--dt", cfg.dt, "Uniform grid step (0 = log-spaced grid)");
  sub->add_option("--points", cfg.points, "Recorded points of the log-spaced grid");
  sub->add_option("--workers", cfg.workers, "Worker threads");
  sub->add_option("--out", cfg.out, "Output path prefix");
  sub->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--config", flags.config_path, "JSON config file mirroring the flags");
}

void add_collision_flags(CLI::App* sub, FlagSet& flags) {
  auto& cfg = flags.values;
  sub->add_option("--omega", cfg.omega, "Battery level splitting");
  sub->add_option("--beta", cfg.beta, "Ancilla inverse temperature");
  sub->add_option("--coupling", cfg.coupling, "Battery-ancilla coupling g");
  sub->add_option("--tau-c", cfg.tau_c, "Collision duration (0 = pi/4 / coupling)");
  sub->add_option("--max-collisions", cfg.max_collisions, "Collision cap");
}

// Start from the config file (when given) and lay explicitly passed flags on top.
qbat::RunConfig merge(const CLI::App* sub, const FlagSet& flags) {
  qbat::RunConfig cfg;
  if (!flags.config_path.empty()) cfg = qbat::load_config(flags.config_path);
  const auto& cli = flags.values;
  auto passed = [sub](const std::string& name) { return sub->count(name) > 0; };
  if (passed("--sites")) cfg.sites = cli.sites;
  if (passed("--cells-x")) cfg.cells_x = cli.cells_x;
  if (passed("--cells-y")) cfg.cells_y = cli.cells_y;
  if (passed("--hopping")) cfg.hopping = cli.hopping;
  if (passed("--gamma")) cfg.gamma = cli.gamma;
  if (passed("--gamma-d")) cfg.gamma_d = cli.gamma_d;
  if (passed("--phi")) cfg.phi = cli.phi;
  if (passed("--disorder")) cfg.disorder = cli.disorder;
  if (passed("--realizations")) cfg.realizations = cli.realizations;
  if (passed("--seed")) cfg.seed = cli.seed;
  if (passed("--t-max")) cfg.t_max = cli.t_max;
  if (passed("--dt")) cfg.dt = cli.dt;
  if (passed("--points")) cfg.points = cli.points;
  if (passed("--workers")) cfg.workers = cli.workers;
  if (passed("--out")) cfg.out = cli.out;
  if (passed("--format"))
    cfg.format = flags.format == "json" ? qbat::OutputFormat::json : qbat::OutputFormat::csv;
  if (sub->get_option_no_throw("--omega")) {
    if (passed("--omega")) cfg.omega = cli.omega;
    if (passed("--beta")) cfg.beta = cli.beta;
    if (passed("--coupling")) cfg.coupling = cli.coupling;
    if (passed("--tau-c")) cfg.tau_c = cli.tau_c;
    if (passed("--max-collisions")) cfg.max_collisions = cli.max_collisions;
  }
  cfg.scenario = sub->get_name();
  return cfg;
}

bool output_prefix_writable(const std::string& prefix) {
  namespace fs = std::filesystem;
  const fs::path parent = fs::path(prefix).parent_path();
  if (parent.empty()) return true;
  std::error_code ec;
  return fs::is_directory(parent, ec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative charging of lattice quantum batteries"};
  app.set_version_flag("--version", qbat::kVersion);
  app.require_subcommand(1);

  FlagSet flags;
  CLI::App* chain = app.add_subcommand("chain", "Disorder sweep on the periodic chain");
  CLI::App* graphene = app.add_subcommand("graphene", "Disorder sweep on the honeycomb lattice");
  CLI::App* dephasing = app.add_subcommand("dephasing", "Dephasing-rate sweep on the chain");
  CLI::App* collision = app.add_subcommand("collision", "Repeated-interaction qubit charging");
  for (CLI::App* sub : {chain, graphene, dephasing, collision}) add_common_flags(sub, flags);
  add_collision_flags(collision, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  qbat::RunConfig cfg;
  try {
    cfg = merge(sub, flags);
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  if (!output_prefix_writable(cfg.out)) {
    std::fprintf(stderr, "error: output prefix %s points into a missing directory\n",
                 cfg.out.c_str());
    return 1;
  }

  qbat::ScenarioReport report;
  try {
    report = qbat::run_scenario(cfg);
  } catch (const qbat::NotConverged& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const qbat::NonUniqueSteadyState& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    qbat::emit(report, cfg.format, cfg.out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }

  if (report.has_solver_errors()) {
    int failed = 0;
    for (const auto& cell : report.realizations)
      if (!cell.error.empty()) ++failed;
    std::fprintf(stderr, "error: %d realization(s) recorded solver errors\n", failed);
    return 3;
  }
  std::printf("%s: wrote %s outputs with prefix %s (%.1f s)\n", cfg.scenario.c_str(),
              cfg.format == qbat::OutputFormat::json ? "json" : "csv", cfg.out.c_str(),
              report.wall_time_s);
  return 0;
}
