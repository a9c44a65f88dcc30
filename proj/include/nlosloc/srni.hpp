#ifndef NLOSLOC_SRNI_HPP_
#define NLOSLOC_SRNI_HPP_

#include <algorithm>
#include <string>

#include "nlosloc/geometry.hpp"
#include "nlosloc/taylor.hpp"

namespace nlosloc {

/// A leave-one-out sub-solve failed while mapping ranges to NLOS space.
class TransformError : public LocalizationError {
 public:
  TransformError(const std::string& what, std::size_t leave_out_index)
      : LocalizationError(what), leave_out_index(leave_out_index) {}
  std::size_t leave_out_index;
};

struct SrniConfig {
  int iter_max = 10;
  // NL components above this count as detected NLOS stations. Defaults to
  // the noise sigma, floored at 1e-3 m so noiseless runs still detect.
  double detection_threshold = 1e-3;  // meters
  TaylorConfig taylor;

  static SrniConfig for_sigma(double sigma) {
    SrniConfig c;
    c.detection_threshold = std::max(sigma, 1e-3);
    return c;
  }
};

struct SrniResult {
  Point2 position;
  NlosVector nlos;
  std::size_t detected_count = 0;  // M
  bool within_valid_zone = false;  // M < (N - 3) / 2
};

/// Maps range measurements to NLOS space: for each station i, localize with
/// every station except i (the test combination) and report
/// NL_i = r'_i - dist(station_i, estimate). Requires N >= 4.
///
/// Each leave-one-out sub-solve is initialized with the full-set solution on
/// the given ranges (one extra solver call per invocation).
NlosVector transform_to_nlos(const RangeSet& ranges, const StationSet& stations,
                             const TaylorConfig& taylor, const Point2& init,
                             SolveCounter* counter = nullptr);

/// Keeps the entry of maximal absolute value (signed), zeros the rest. Ties
/// broken by lowest index.
NlosVector threshold_largest(const NlosVector& nl);

/// SRNI: iteratively estimate the NLOS vector via the leave-one-out
/// transform, accumulate its largest component each round, then localize on
/// the corrected ranges.
SrniResult srni_solve(const RangeSet& ranges, const StationSet& stations,
                      const SrniConfig& config, const Point2& init,
                      SolveCounter* counter = nullptr);

/// Valid-zone rule: recovery is trustworthy when the detected NLOS count is
/// below (N - 3) / 2. Evaluated in exact integer arithmetic.
bool valid_zone(std::size_t detected_count, std::size_t n_stations);

}  // namespace nlosloc

#endif  // NLOSLOC_SRNI_HPP_
