#ifndef NLOSLOC_SIMKIT_HPP_
#define NLOSLOC_SIMKIT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlosloc/geometry.hpp"
#include "nlosloc/srni.hpp"

namespace nlosloc {

enum class Algorithm { LS, BB, RWGH, SRNI };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

enum class ScenarioId {
  A_iterations,
  B_noise,
  C_nlos_magnitude,
  D_nlos_count,
  E_station_count,
  F_timing,
  Custom,
};

/// Which quantity the sweep values vary.
enum class SweepParameter {
  Iterations,     // SRNI iteration count
  Sigma,          // noise standard deviation, meters
  NlosMagnitude,  // NLOS bias on the first station, meters
  NlosCount,      // number of leading stations taking the template NLOS
  StationCount,   // total station count
};

struct ScenarioConfig {
  ScenarioId scenario_id = ScenarioId::Custom;
  SweepParameter sweep_parameter = SweepParameter::NlosMagnitude;
  StationSet stations;
  Point2 ms_true;
  NlosVector nl_template;  // entries >= 0
  double sigma = 60.0;
  int trials = 1000;
  std::vector<double> sweep;
  std::vector<Algorithm> algorithms;
  std::uint64_t seed = 0;
  int srni_iter_max = 10;
  // Initialize solvers from the bounding-box estimate instead of the true
  // MS position.
  bool realistic_init = false;
};

struct TrialRecord {
  double sweep_point = 0.0;
  int trial_index = 0;
  Algorithm algorithm = Algorithm::LS;
  Point2 estimate;
  double error = 0.0;  // meters; meaningless when failed
  bool failed = false;
  std::uint64_t solver_invocations = 0;
  double wall_time = 0.0;  // seconds
};

struct SweepCell {
  double sweep_point = 0.0;
  Algorithm algorithm = Algorithm::LS;
  double rmse = 0.0;
  double mean_solver_invocations = 0.0;
  double mean_wall_time = 0.0;
  int trial_count = 0;    // successful trials entering the RMSE
  int failed_trials = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;
};

/// RMSE over one cell's successful trial records. Order-independent.
double rmse(const std::vector<TrialRecord>& records);

/// The eight-station reference geometry used by all presets.
StationSet reference_stations();

/// Reference NLOS template (five NLOS stations, three LOS).
NlosVector reference_nlos_template();

/// Station set for a station-count sweep point: the first n of the
/// reference list, extended past eight with stations on a 6000 m circle.
StationSet stations_for_count(const StationSet& base, std::size_t n);

/// Runs every sweep point x trial x algorithm. Deterministic for a fixed
/// config and seed, independent of worker count (0 = auto).
SweepResult run_scenario(const ScenarioConfig& config,
                         std::vector<TrialRecord>* trial_records = nullptr,
                         unsigned workers = 1);

/// The six preset experiment scenarios.
std::map<ScenarioId, ScenarioConfig> scenario_presets();

}  // namespace nlosloc

#endif  // NLOSLOC_SIMKIT_HPP_
