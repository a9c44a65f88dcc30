#ifndef NLOSLOC_CSV_HPP_
#define NLOSLOC_CSV_HPP_

#include <string>

#include "nlosloc/simkit.hpp"

namespace nlosloc {

/// Formats a float with 6 significant digits (trailing zeros kept).
std::string format_float(double v);

/// Serializes a sweep result. Header
/// `sweep_point,algorithm,rmse_m,mean_solver_invocations,mean_wall_time_s,trial_count,failed_trials`,
/// LF line endings, rows sorted by (sweep_point, algorithm name). Wall time
/// is emitted as 0 unless include_wall_time is set, keeping the bytes
/// reproducible across runs.
std::string sweep_csv(const SweepResult& result, bool include_wall_time = false);

/// Serializes retained trial records; failed trials carry the sentinel
/// `failed` in the error column.
std::string trials_csv(const std::vector<TrialRecord>& records,
                       bool include_wall_time = false);

void write_file(const std::string& path, const std::string& contents);

}  // namespace nlosloc

#endif  // NLOSLOC_CSV_HPP_
