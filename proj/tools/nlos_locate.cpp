// nlos-locate: TOA localization simulator and single-shot estimator.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlosloc/baselines.hpp"
#include "nlosloc/csv.hpp"
#include "nlosloc/simkit.hpp"
#include "nlosloc/srni.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlosloc;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string scenario_id_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::A_iterations: return "a";
    case ScenarioId::B_noise: return "b";
    case ScenarioId::C_nlos_magnitude: return "c";
    case ScenarioId::D_nlos_count: return "d";
    case ScenarioId::E_station_count: return "e";
    case ScenarioId::F_timing: return "f";
    case ScenarioId::Custom: return "custom";
  }
  return "custom";
}

ScenarioId scenario_id_from_name(const std::string& name) {
  if (name == "a") return ScenarioId::A_iterations;
  if (name == "b") return ScenarioId::B_noise;
  if (name == "c") return ScenarioId::C_nlos_magnitude;
  if (name == "d") return ScenarioId::D_nlos_count;
  if (name == "e") return ScenarioId::E_station_count;
  if (name == "f") return ScenarioId::F_timing;
  if (name == "custom") return ScenarioId::Custom;
  throw LocalizationError("unknown scenario: " + name);
}

std::string sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::Iterations: return "iterations";
    case SweepParameter::Sigma: return "sigma";
    case SweepParameter::NlosMagnitude: return "nlos_magnitude";
    case SweepParameter::NlosCount: return "nlos_count";
    case SweepParameter::StationCount: return "station_count";
  }
  return "nlos_magnitude";
}

SweepParameter sweep_parameter_from_name(const std::string& name) {
  if (name == "iterations") return SweepParameter::Iterations;
  if (name == "sigma") return SweepParameter::Sigma;
  if (name == "nlos_magnitude") return SweepParameter::NlosMagnitude;
  if (name == "nlos_count") return SweepParameter::NlosCount;
  if (name == "station_count") return SweepParameter::StationCount;
  throw LocalizationError("unknown sweep parameter: " + name);
}

json config_to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = scenario_id_name(c.scenario_id);
  j["sweep_parameter"] = sweep_parameter_name(c.sweep_parameter);
  json stations = json::array();
  for (const Point2& p : c.stations.stations) stations.push_back({p.x, p.y});
  j["stations"] = stations;
  j["ms_true"] = {c.ms_true.x, c.ms_true.y};
  j["nl_template"] = c.nl_template.values;
  j["sigma"] = c.sigma;
  j["trials"] = c.trials;
  j["sweep"] = c.sweep;
  json algos = json::array();
  for (Algorithm a : c.algorithms) algos.push_back(algorithm_name(a));
  j["algorithms"] = algos;
  j["seed"] = c.seed;
  j["srni_iter_max"] = c.srni_iter_max;
  j["realistic_init"] = c.realistic_init;
  return j;
}

ScenarioConfig config_from_json(const json& j) {
  ScenarioConfig c;
  c.scenario_id = scenario_id_from_name(j.value("scenario", "custom"));
  c.sweep_parameter = sweep_parameter_from_name(j.value("sweep_parameter", "nlos_magnitude"));
  for (const auto& p : j.at("stations")) {
    c.stations.stations.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  c.ms_true = {j.at("ms_true").at(0).get<double>(), j.at("ms_true").at(1).get<double>()};
  c.nl_template.values = j.at("nl_template").get<std::vector<double>>();
  c.sigma = j.value("sigma", 60.0);
  c.trials = j.value("trials", 1000);
  c.sweep = j.at("sweep").get<std::vector<double>>();
  for (const auto& a : j.at("algorithms")) {
    c.algorithms.push_back(algorithm_from_name(a.get<std::string>()));
  }
  c.seed = j.value("seed", std::uint64_t{0});
  c.srni_iter_max = j.value("srni_iter_max", 10);
  c.realistic_init = j.value("realistic_init", false);
  return c;
}

unsigned worker_count_from_env() {
  const char* env = std::getenv("NLOS_LOCATE_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  const long v = std::strtol(env, nullptr, 10);
  return v > 0 ? static_cast<unsigned>(v) : 0;
}

struct RunOptions {
  std::string out_dir = ".";
  bool keep_trials = false;
  bool timing = false;
};

void print_summary(const SweepResult& result) {
  std::printf("%12s %6s %14s %12s %8s %8s\n", "sweep_point", "algo", "rmse_m",
              "mean_solves", "trials", "failed");
  for (const SweepCell& c : result.cells) {
    std::printf("%12g %6s %14.4f %12.2f %8d %8d\n", c.sweep_point,
                algorithm_name(c.algorithm).c_str(), c.rmse,
                c.mean_solver_invocations, c.trial_count, c.failed_trials);
  }
}

int execute_scenario(const ScenarioConfig& config, const RunOptions& opts,
                     const std::string& config_source) {
  std::vector<TrialRecord> trials;
  SweepResult result;
  try {
    result = run_scenario(config, opts.keep_trials ? &trials : nullptr,
                          worker_count_from_env());
  } catch (const std::exception& e) {
    std::cerr << "scenario execution failed: " << e.what() << "\n";
    return 2;
  }

  try {
    fs::create_directories(opts.out_dir);
    const fs::path out(opts.out_dir);
    std::vector<std::string> emitted;

    write_file((out / "sweep.csv").string(), sweep_csv(result, opts.timing));
    emitted.push_back("sweep.csv");
    if (opts.keep_trials) {
      write_file((out / "trials.csv").string(), trials_csv(trials, opts.timing));
      emitted.push_back("trials.csv");
    }

    json manifest;
    manifest["tool_version"] = kVersion;
    manifest["config_source"] = config_source;
    manifest["config"] = config_to_json(config);
    manifest["seed"] = config.seed;
    manifest["output_directory"] = fs::absolute(out).string();
    manifest["files"] = emitted;
    write_file((out / "manifest.json").string(), manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    std::cerr << "failed to write outputs: " << e.what() << "\n";
    return 2;
  }

  print_summary(result);
  return 0;
}

std::vector<double> load_number_list(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LocalizationError("cannot open file: " + path);
  return json::parse(f).get<std::vector<double>>();
}

StationSet load_stations(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw LocalizationError("cannot open file: " + path);
  StationSet s;
  for (const auto& p : json::parse(f)) {
    s.stations.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  }
  return s;
}

int run_localize(const std::string& stations_path, const std::string& ranges_path,
                 const std::string& algo_name, double sigma) {
  StationSet stations;
  RangeSet ranges;
  Algorithm algo;
  try {
    stations = load_stations(stations_path);
    ranges.ranges = load_number_list(ranges_path);
    algo = algorithm_from_name(algo_name);
    if (ranges.size() != stations.size()) {
      throw LocalizationError("range count does not match station count");
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const Point2 init = bounding_box_estimate(stations, ranges);
    const TaylorConfig taylor;
    switch (algo) {
      case Algorithm::BB:
        std::printf("position: (%.3f, %.3f)\n", init.x, init.y);
        break;
      case Algorithm::LS: {
        const auto est = solve(stations, ranges, init, taylor);
        std::printf("position: (%.3f, %.3f)\n", est.position.x, est.position.y);
        break;
      }
      case Algorithm::RWGH: {
        const Point2 est = rwgh_estimate(stations, ranges, taylor, init);
        std::printf("position: (%.3f, %.3f)\n", est.x, est.y);
        break;
      }
      case Algorithm::SRNI: {
        SrniConfig srni = SrniConfig::for_sigma(sigma);
        const SrniResult res = srni_solve(ranges, stations, srni, init);
        std::printf("position: (%.3f, %.3f)\n", res.position.x, res.position.y);
        std::printf("M: %zu\n", res.detected_count);
        std::printf("NL:");
        for (double v : res.nlos.values) std::printf(" %.3f", v);
        std::printf("\n");
        std::printf("valid: %s\n", res.within_valid_zone ? "true" : "false");
        break;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "estimation failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TOA localization simulator with NLOS mitigation"};
  app.require_subcommand(1);

  // scenario <a..f>
  std::string scenario_name;
  RunOptions scen_opts;
  std::uint64_t seed = 0;
  int trials_override = -1;
  bool realistic_init = false;
  auto* scen = app.add_subcommand("scenario", "Run a preset experiment scenario");
  scen->add_option("name", scenario_name, "Scenario (a-f)")
      ->required()
      ->check(CLI::IsMember({"a", "b", "c", "d", "e", "f"}));
  scen->add_option("--seed", seed, "Random seed");
  scen->add_option("--trials", trials_override, "Override trial count");
  scen->add_option("--out", scen_opts.out_dir, "Output directory");
  scen->add_flag("--keep-trials", scen_opts.keep_trials, "Also write trials.csv");
  scen->add_flag("--timing", scen_opts.timing, "Emit measured wall times (not reproducible)");
  scen->add_flag("--realistic-init", realistic_init,
                 "Initialize solvers from the bounding-box estimate");

  // custom --config
  std::string config_path;
  RunOptions cust_opts;
  auto* cust = app.add_subcommand("custom", "Run a scenario from a JSON config");
  cust->add_option("--config", config_path, "Config file (JSON)")->required();
  cust->add_option("--out", cust_opts.out_dir, "Output directory");
  cust->add_flag("--keep-trials", cust_opts.keep_trials, "Also write trials.csv");
  cust->add_flag("--timing", cust_opts.timing, "Emit measured wall times (not reproducible)");

  // localize
  std::string stations_path, ranges_path, algo_name = "SRNI";
  double loc_sigma = 0.0;
  auto* loc = app.add_subcommand("localize", "Single-shot estimation from files");
  loc->add_option("--stations", stations_path, "Stations file (JSON list of [x,y])")->required();
  loc->add_option("--ranges", ranges_path, "Ranges file (JSON list of meters)")->required();
  loc->add_option("--algo", algo_name, "Algorithm: LS, BB, RWGH, SRNI");
  loc->add_option("--sigma", loc_sigma, "Noise sigma for the detection threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (scen->parsed()) {
    ScenarioConfig config;
    try {
      auto presets = scenario_presets();
      config = presets.at(scenario_id_from_name(scenario_name));
      config.seed = seed;
      config.realistic_init = realistic_init;
      if (trials_override > 0) config.trials = trials_override;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    return execute_scenario(config, scen_opts, "preset:" + scenario_name);
  }
  if (cust->parsed()) {
    ScenarioConfig config;
    try {
      std::ifstream f(config_path);
      if (!f) throw LocalizationError("cannot open config file: " + config_path);
      json j = json::parse(f);
      // A manifest.json is accepted directly; its embedded config is used.
      if (j.contains("config")) j = j.at("config");
      config = config_from_json(j);
    } catch (const std::exception& e) {
      std::cerr << "error: invalid config " << config_path << ": " << e.what() << "\n";
      return 1;
    }
    return execute_scenario(config, cust_opts, config_path);
  }
  return run_localize(stations_path, ranges_path, algo_name, loc_sigma);
}
