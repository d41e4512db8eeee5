#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "qbat/scenarios.hpp"

namespace qbat {

namespace {

using nlohmann::json;

std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", sig12(x));
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit: cannot open " + path + " for writing");
  return out;
}

json config_to_json(const RunConfig& cfg) {
  return json{{"scenario", cfg.scenario},
              {"sites", cfg.sites},
              {"cells_x", cfg.cells_x},
              {"cells_y", cfg.cells_y},
              {"hopping", sig12(cfg.hopping)},
              {"gamma", sig12(cfg.gamma)},
              {"gamma_d", json(cfg.gamma_d)},
              {"phi", sig12(cfg.phi)},
              {"disorder", json(cfg.disorder)},
              {"realizations", cfg.realizations},
              {"t_max", sig12(cfg.t_max)},
              {"dt", sig12(cfg.dt)},
              {"points", cfg.points},
              {"seed", cfg.seed},
              {"workers", cfg.workers},
              {"out", cfg.out},
              {"format", cfg.format == OutputFormat::csv ? "csv" : "json"},
              {"omega", sig12(cfg.omega)},
              {"beta", sig12(cfg.beta)},
              {"coupling", sig12(cfg.coupling)},
              {"tau_c", sig12(cfg.tau_c)},
              {"max_collisions", cfg.max_collisions}};
}

json rounded(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(sig12(x));
  return arr;
}

json rounded(const RealVector& xs) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < xs.size(); ++k) arr.push_back(sig12(xs(k)));
  return arr;
}

void write_sweep_csv(const ScenarioReport& report, const std::string& prefix) {
  auto out = open_out(prefix + "_sweep.csv");
  out << "parameter,count,e_ss_mean,e_ss_stderr,w_bound_mean,power_mean,power_stderr,"
         "tau99_mean\n";
  for (const auto& agg : report.aggregates)
    out << fmt12(agg.parameter) << ',' << agg.count << ',' << fmt12(agg.e_ss_mean) << ','
        << fmt12(agg.e_ss_stderr) << ',' << fmt12(agg.w_bound_mean) << ','
        << fmt12(agg.power_mean) << ',' << fmt12(agg.power_stderr) << ','
        << fmt12(agg.tau99_mean) << '\n';
}

void write_trace_csvs(const ScenarioReport& report, const std::string& prefix) {
  for (const auto& agg : report.aggregates) {
    auto out = open_out(prefix + "_trace_" + fmt12(agg.parameter) + ".csv");
    out << "time,ergotropy_mean,ratio_mean\n";
    for (std::size_t k = 0; k < agg.trace_times.size(); ++k)
      out << fmt12(agg.trace_times[k]) << ',' << fmt12(agg.trace_ergotropy_mean[k]) << ','
          << fmt12(agg.trace_ratio_mean[k]) << '\n';
  }
}

void write_occupations_csv(const ScenarioReport& report, const std::string& prefix) {
  auto out = open_out(prefix + "_occupations.csv");
  out << "parameter,realization,index,energy,occupation\n";
  for (const auto& cell : report.realizations) {
    if (!cell.error.empty()) continue;
    for (Eigen::Index b = 0; b < cell.report.occupations.size(); ++b)
      out << fmt12(cell.parameter) << ',' << cell.realization << ',' << b << ','
          << fmt12(cell.energies(b)) << ',' << fmt12(cell.report.occupations(b)) << '\n';
  }
}

void write_collision_csv(const CollisionRun& run, const std::string& prefix) {
  auto out = open_out(prefix + "_collision.csv");
  out << "index,excited_population,ergotropy,delta\n";
  for (const auto& step : run.steps)
    out << step.index << ',' << fmt12(step.excited_population) << ','
        << fmt12(step.ergotropy) << ',' << fmt12(step.delta) << '\n';
}

}  // namespace

double sig12(double x) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

std::string report_to_json(const ScenarioReport& report) {
  json doc;
  doc["version"] = kVersion;
  doc["config"] = config_to_json(report.config);
  doc["timestamp"] = report.timestamp;
  doc["wall_time_s"] = sig12(report.wall_time_s);

  json aggs = json::array();
  for (const auto& agg : report.aggregates) {
    json j{{"parameter", sig12(agg.parameter)},
           {"count", agg.count},
           {"e_ss_mean", sig12(agg.e_ss_mean)},
           {"e_ss_stderr", sig12(agg.e_ss_stderr)},
           {"w_bound_mean", sig12(agg.w_bound_mean)},
           {"power_mean", sig12(agg.power_mean)},
           {"power_stderr", sig12(agg.power_stderr)},
           {"tau99_mean", sig12(agg.tau99_mean)}};
    j["trace"] = json{{"times", rounded(agg.trace_times)},
                      {"ergotropy_mean", rounded(agg.trace_ergotropy_mean)},
                      {"ratio_mean", rounded(agg.trace_ratio_mean)}};
    aggs.push_back(std::move(j));
  }
  doc["aggregates"] = std::move(aggs);

  json cells = json::array();
  const bool graphene = report.config.scenario == "graphene";
  for (const auto& cell : report.realizations) {
    json j{{"parameter", sig12(cell.parameter)},
           {"realization", cell.realization},
           {"seed", cell.seed}};
    if (!cell.error.empty()) {
      j["error"] = cell.error;
      cells.push_back(std::move(j));
      continue;
    }
    j["e_ss"] = sig12(cell.report.ergotropy);
    j["mean_energy"] = sig12(cell.report.mean_energy);
    j["passive_energy"] = sig12(cell.report.passive_energy);
    if (cell.report.w_bound) j["w_bound"] = sig12(*cell.report.w_bound);
    if (cell.report.beta_bar) j["beta_bar"] = sig12(*cell.report.beta_bar);
    if (cell.trace.tau99) j["tau99"] = sig12(*cell.trace.tau99);
    if (cell.trace.power) j["power"] = sig12(*cell.trace.power);
    if (graphene) {
      j["energies"] = rounded(cell.energies);
      j["occupations"] = rounded(cell.report.occupations);
    }
    cells.push_back(std::move(j));
  }
  doc["realizations"] = std::move(cells);

  if (report.collision) {
    json steps = json::array();
    for (const auto& step : report.collision->steps)
      steps.push_back(json{{"index", step.index},
                           {"excited_population", sig12(step.excited_population)},
                           {"ergotropy", sig12(step.ergotropy)},
                           {"delta", sig12(step.delta)}});
    doc["collision"] = json{{"collisions", report.collision->collisions},
                            {"ergotropy", sig12(report.collision->ergotropy)},
                            {"steps", std::move(steps)}};
  }
  return doc.dump(2) + "\n";
}

void emit(const ScenarioReport& report, OutputFormat format, const std::string& prefix) {
  if (format == OutputFormat::json) {
    auto out = open_out(prefix + ".json");
    out << report_to_json(report);
    return;
  }
  if (report.collision) {
    write_collision_csv(*report.collision, prefix);
    return;
  }
  write_sweep_csv(report, prefix);
  write_trace_csvs(report, prefix);
  if (report.config.scenario == "graphene") write_occupations_csv(report, prefix);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: parse error in " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");

  RunConfig cfg;
  auto as_list = [](const json& v) {
    std::vector<double> out;
    if (v.is_array())
      for (const auto& x : v) out.push_back(x.get<double>());
    else
      out.push_back(v.get<double>());
    return out;
  };
  try {
    for (const auto& [raw_key, value] : doc.items()) {
      std::string key = raw_key;
      for (char& c : key)
        if (c == '-') c = '_';
      if (key == "scenario") cfg.scenario = value.get<std::string>();
      else if (key == "sites") cfg.sites = value.get<int>();
      else if (key == "cells_x") cfg.cells_x = value.get<int>();
      else if (key == "cells_y") cfg.cells_y = value.get<int>();
      else if (key == "hopping") cfg.hopping = value.get<double>();
      else if (key == "gamma") cfg.gamma = value.get<double>();
      else if (key == "gamma_d") cfg.gamma_d = as_list(value);
      else if (key == "phi") cfg.phi = value.get<double>();
      else if (key == "disorder") cfg.disorder = as_list(value);
      else if (key == "realizations") cfg.realizations = value.get<int>();
      else if (key == "t_max") cfg.t_max = value.get<double>();
      else if (key == "dt") cfg.dt = value.get<double>();
      else if (key == "points") cfg.points = value.get<int>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "workers") cfg.workers = value.get<int>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "format") {
        const std::string f = value.get<std::string>();
        if (f == "csv") cfg.format = OutputFormat::csv;
        else if (f == "json") cfg.format = OutputFormat::json;
        else throw std::invalid_argument("config: format must be csv or json");
      } else if (key == "omega") cfg.omega = value.get<double>();
      else if (key == "beta") cfg.beta = value.get<double>();
      else if (key == "coupling") cfg.coupling = value.get<double>();
      else if (key == "tau_c") cfg.tau_c = value.get<double>();
      else if (key == "max_collisions") cfg.max_collisions = value.get<int>();
      else throw std::invalid_argument("config: unknown key " + raw_key);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument("config: bad value type: " + std::string(e.what()));
  }
  return cfg;
}

}  // namespace qbat
