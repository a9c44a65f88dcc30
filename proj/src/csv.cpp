#include "nlosloc/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace nlosloc {

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%#.6g", v);
  std::string s(buf);
  // %#g can leave a trailing decimal point ("100000.").
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::string sweep_csv(const SweepResult& result, bool include_wall_time) {
  std::vector<SweepCell> cells = result.cells;
  std::stable_sort(cells.begin(), cells.end(), [](const SweepCell& a, const SweepCell& b) {
    if (a.sweep_point != b.sweep_point) return a.sweep_point < b.sweep_point;
    return algorithm_name(a.algorithm) < algorithm_name(b.algorithm);
  });

  std::string out =
      "sweep_point,algorithm,rmse_m,mean_solver_invocations,mean_wall_time_s,"
      "trial_count,failed_trials\n";
  for (const SweepCell& c : cells) {
    out += format_float(c.sweep_point);
    out += ',';
    out += algorithm_name(c.algorithm);
    out += ',';
    out += format_float(c.rmse);
    out += ',';
    out += format_float(c.mean_solver_invocations);
    out += ',';
    out += format_float(include_wall_time ? c.mean_wall_time : 0.0);
    out += ',';
    out += std::to_string(c.trial_count);
    out += ',';
    out += std::to_string(c.failed_trials);
    out += '\n';
  }
  return out;
}

std::string trials_csv(const std::vector<TrialRecord>& records, bool include_wall_time) {
  std::string out =
      "sweep_point,trial_index,algorithm,estimate_x_m,estimate_y_m,error_m,"
      "solver_invocations,wall_time_s\n";
  for (const TrialRecord& r : records) {
    out += format_float(r.sweep_point);
    out += ',';
    out += std::to_string(r.trial_index);
    out += ',';
    out += algorithm_name(r.algorithm);
    out += ',';
    if (r.failed) {
      out += ",,failed";
    } else {
      out += format_float(r.estimate.x);
      out += ',';
      out += format_float(r.estimate.y);
      out += ',';
      out += format_float(r.error);
    }
    out += ',';
    out += std::to_string(r.solver_invocations);
    out += ',';
    out += format_float(include_wall_time ? r.wall_time : 0.0);
    out += '\n';
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw LocalizationError("cannot open for writing: " + path);
  }
  f << contents;
  if (!f) {
    throw LocalizationError("write failed: " + path);
  }
}

}  // namespace nlosloc
