#include "nlosloc/simkit.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "nlosloc/baselines.hpp"
#include "nlosloc/taylor.hpp"

namespace nlosloc {

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::LS: return "LS";
    case Algorithm::BB: return "BB";
    case Algorithm::RWGH: return "RWGH";
    case Algorithm::SRNI: return "SRNI";
  }
  return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "LS") return Algorithm::LS;
  if (upper == "BB") return Algorithm::BB;
  if (upper == "RWGH") return Algorithm::RWGH;
  if (upper == "SRNI") return Algorithm::SRNI;
  throw LocalizationError("unknown algorithm: " + name);
}

double rmse(const std::vector<TrialRecord>& records) {
  if (records.empty()) {
    throw LocalizationError("rmse: empty record list");
  }
  double sum = 0.0;
  for (const TrialRecord& r : records) sum += r.error * r.error;
  return std::sqrt(sum / static_cast<double>(records.size()));
}

StationSet reference_stations() {
  return StationSet{{{6000, 0},
                     {3000, -6000},
                     {-3000, -5000},
                     {-6000, -1000},
                     {-4000, 6000},
                     {0, 5000},
                     {4000, 6000},
                     {-6000, 4000}}};
}

NlosVector reference_nlos_template() {
  return NlosVector{{1000, 500, 800, 750, 400, 0, 0, 0}};
}

StationSet stations_for_count(const StationSet& base, std::size_t n) {
  StationSet out;
  for (std::size_t i = 0; i < std::min(n, base.size()); ++i) {
    out.stations.push_back(base[i]);
  }
  // Extras go on a 6000 m circle at 45 degree steps starting from 22.5.
  constexpr double kRadius = 6000.0;
  for (std::size_t k = 0; out.size() < n; ++k) {
    const double angle = (22.5 + 45.0 * static_cast<double>(k)) * M_PI / 180.0;
    out.stations.push_back({kRadius * std::cos(angle), kRadius * std::sin(angle)});
  }
  return out;
}

namespace {

struct EffectiveSetup {
  StationSet stations;
  NlosVector nl;
  double sigma;
  int srni_iter_max;
};

EffectiveSetup setup_for_sweep_point(const ScenarioConfig& config, double value) {
  EffectiveSetup s;
  s.stations = config.stations;
  s.nl = config.nl_template;
  s.sigma = config.sigma;
  s.srni_iter_max = config.srni_iter_max;

  switch (config.sweep_parameter) {
    case SweepParameter::Iterations:
      s.srni_iter_max = std::max(1, static_cast<int>(std::lround(value)));
      break;
    case SweepParameter::Sigma:
      s.sigma = value;
      break;
    case SweepParameter::NlosMagnitude:
      s.nl = NlosVector::zeros(config.stations.size());
      if (!s.nl.values.empty()) s.nl.values[0] = value;
      break;
    case SweepParameter::NlosCount: {
      const auto m = static_cast<std::size_t>(std::lround(value));
      s.nl = NlosVector::zeros(config.stations.size());
      for (std::size_t i = 0; i < std::min(m, config.nl_template.size()); ++i) {
        s.nl.values[i] = config.nl_template[i];
      }
      break;
    }
    case SweepParameter::StationCount: {
      const auto n = static_cast<std::size_t>(std::lround(value));
      s.stations = stations_for_count(config.stations, n);
      s.nl = NlosVector::zeros(n);
      for (std::size_t i = 0; i < std::min(n, config.nl_template.size()); ++i) {
        s.nl.values[i] = config.nl_template[i];
      }
      break;
    }
  }
  return s;
}

void run_trial(const ScenarioConfig& config, const EffectiveSetup& setup,
               double sweep_point, int trial, TrialRecord* out) {
  const NoiseModel noise{setup.sigma, config.seed};
  const RangeSet ranges =
      measure_ranges(setup.stations, config.ms_true, setup.nl, noise,
                     static_cast<std::uint64_t>(trial));
  const Point2 init = config.realistic_init
                          ? bounding_box_estimate(setup.stations, ranges)
                          : config.ms_true;
  const TaylorConfig taylor;

  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    const Algorithm algo = config.algorithms[a];
    TrialRecord& rec = out[a];
    rec.sweep_point = sweep_point;
    rec.trial_index = trial;
    rec.algorithm = algo;

    SolveCounter counter;
    const auto start = std::chrono::steady_clock::now();
    try {
      switch (algo) {
        case Algorithm::LS:
          rec.estimate = solve(setup.stations, ranges, init, taylor, &counter).position;
          break;
        case Algorithm::BB:
          rec.estimate = bounding_box_estimate(setup.stations, ranges);
          break;
        case Algorithm::RWGH:
          rec.estimate = rwgh_estimate(setup.stations, ranges, taylor, init, &counter);
          break;
        case Algorithm::SRNI: {
          SrniConfig srni = SrniConfig::for_sigma(setup.sigma);
          srni.iter_max = setup.srni_iter_max;
          srni.taylor = taylor;
          rec.estimate = srni_solve(ranges, setup.stations, srni, init, &counter).position;
          break;
        }
      }
      rec.error = true_range(rec.estimate, config.ms_true);
    } catch (const LocalizationError&) {
      rec.failed = true;
      rec.error = std::numeric_limits<double>::quiet_NaN();
    }
    rec.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rec.solver_invocations = counter.count;
  }
}

}  // namespace

SweepResult run_scenario(const ScenarioConfig& config,
                         std::vector<TrialRecord>* trial_records, unsigned workers) {
  if (config.trials < 1 || config.sweep.empty() || config.algorithms.empty()) {
    throw LocalizationError("run_scenario: invalid configuration");
  }
  if (config.stations.size() < 3) {
    throw LocalizationError("run_scenario: at least 3 stations required");
  }

  const std::size_t n_sweep = config.sweep.size();
  const std::size_t n_algo = config.algorithms.size();
  const std::size_t n_trials = static_cast<std::size_t>(config.trials);

  std::vector<EffectiveSetup> setups;
  setups.reserve(n_sweep);
  for (double value : config.sweep) setups.push_back(setup_for_sweep_point(config, value));

  // One slot per (sweep point, trial, algorithm); workers fill disjoint
  // slots so the aggregate is independent of scheduling.
  std::vector<TrialRecord> records(n_sweep * n_trials * n_algo);
  const std::size_t n_tasks = n_sweep * n_trials;

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(n_tasks));

  std::atomic<std::size_t> next_task{0};
  auto worker_fn = [&]() {
    while (true) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= n_tasks) break;
      const std::size_t sweep_idx = task / n_trials;
      const int trial = static_cast<int>(task % n_trials);
      run_trial(config, setups[sweep_idx], config.sweep[sweep_idx], trial,
                &records[task * n_algo]);
    }
  };
  if (workers <= 1) {
    worker_fn();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker_fn);
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  for (std::size_t sweep_idx = 0; sweep_idx < n_sweep; ++sweep_idx) {
    for (std::size_t a = 0; a < n_algo; ++a) {
      SweepCell cell;
      cell.sweep_point = config.sweep[sweep_idx];
      cell.algorithm = config.algorithms[a];
      double sum_sq = 0.0, sum_inv = 0.0, sum_time = 0.0;
      for (std::size_t t = 0; t < n_trials; ++t) {
        const TrialRecord& rec = records[(sweep_idx * n_trials + t) * n_algo + a];
        sum_inv += static_cast<double>(rec.solver_invocations);
        sum_time += rec.wall_time;
        if (rec.failed) {
          ++cell.failed_trials;
        } else {
          sum_sq += rec.error * rec.error;
          ++cell.trial_count;
        }
      }
      cell.rmse = cell.trial_count > 0
                      ? std::sqrt(sum_sq / static_cast<double>(cell.trial_count))
                      : std::numeric_limits<double>::quiet_NaN();
      cell.mean_solver_invocations = sum_inv / static_cast<double>(n_trials);
      cell.mean_wall_time = sum_time / static_cast<double>(n_trials);
      result.cells.push_back(cell);
    }
  }

  if (trial_records != nullptr) *trial_records = std::move(records);
  return result;
}

std::map<ScenarioId, ScenarioConfig> scenario_presets() {
  ScenarioConfig base;
  base.stations = reference_stations();
  base.ms_true = {2000, 1000};
  base.nl_template = reference_nlos_template();
  base.sigma = 60.0;
  base.trials = 1000;
  base.algorithms = {Algorithm::LS, Algorithm::BB, Algorithm::RWGH, Algorithm::SRNI};
  base.seed = 0;

  std::map<ScenarioId, ScenarioConfig> presets;

  {
    ScenarioConfig c = base;
    c.scenario_id = ScenarioId::A_iterations;
    c.sweep_parameter = SweepParameter::Iterations;
    c.nl_template = NlosVector{{1000, 500, 0, 0, 0, 0, 0, 0}};
    for (int i = 1; i <= 10; ++i) c.sweep.push_back(i);
    c.algorithms = {Algorithm::SRNI};
    presets[ScenarioId::A_iterations] = c;
  }
  {
    ScenarioConfig c = base;
    c.scenario_id = ScenarioId::B_noise;
    c.sweep_parameter = SweepParameter::Sigma;
    c.nl_template = NlosVector{{1000, 0, 0, 0, 0, 0, 0, 0}};
    for (int s = 0; s <= 100; s += 10) c.sweep.push_back(s);
    presets[ScenarioId::B_noise] = c;
  }
  {
    ScenarioConfig c = base;
    c.scenario_id = ScenarioId::C_nlos_magnitude;
    c.sweep_parameter = SweepParameter::NlosMagnitude;
    for (int m = 0; m <= 1000; m += 100) c.sweep.push_back(m);
    presets[ScenarioId::C_nlos_magnitude] = c;
  }
  {
    ScenarioConfig c = base;
    c.scenario_id = ScenarioId::D_nlos_count;
    c.sweep_parameter = SweepParameter::NlosCount;
    for (int m = 0; m <= 5; ++m) c.sweep.push_back(m);
    presets[ScenarioId::D_nlos_count] = c;
  }
  {
    ScenarioConfig c = base;
    c.scenario_id = ScenarioId::E_station_count;
    c.sweep_parameter = SweepParameter::StationCount;
    c.nl_template = NlosVector{{1000, 0, 0, 0, 0, 0, 0, 0}};
    for (int n = 4; n <= 10; ++n) c.sweep.push_back(n);
    presets[ScenarioId::E_station_count] = c;
  }
  {
    ScenarioConfig c = base;
    c.scenario_id = ScenarioId::F_timing;
    c.sweep_parameter = SweepParameter::StationCount;
    c.nl_template = NlosVector{{1000, 0, 0, 0, 0, 0, 0, 0}};
    c.trials = 100;
    for (int n = 4; n <= 10; ++n) c.sweep.push_back(n);
    c.algorithms = {Algorithm::LS, Algorithm::RWGH, Algorithm::SRNI};
    presets[ScenarioId::F_timing] = c;
  }
  return presets;
}

}  // namespace nlosloc
