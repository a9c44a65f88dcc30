#include "nlosloc/srni.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nlosloc {

namespace {

StationSet drop_station(const StationSet& stations, std::size_t skip) {
  StationSet out;
  out.stations.reserve(stations.size() - 1);
  for (std::size_t i = 0; i < stations.size(); ++i) {
    if (i != skip) out.stations.push_back(stations[i]);
  }
  return out;
}

RangeSet drop_range(const RangeSet& ranges, std::size_t skip) {
  RangeSet out;
  out.ranges.reserve(ranges.size() - 1);
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    if (i != skip) out.ranges.push_back(ranges[i]);
  }
  return out;
}

TaylorConfig drop_variance(const TaylorConfig& config, std::size_t skip) {
  TaylorConfig out = config;
  if (!out.variances.empty()) {
    out.variances.clear();
    for (std::size_t i = 0; i < config.variances.size(); ++i) {
      if (i != skip) out.variances.push_back(config.variances[i]);
    }
  }
  return out;
}

}  // namespace

NlosVector transform_to_nlos(const RangeSet& ranges, const StationSet& stations,
                             const TaylorConfig& taylor, const Point2& init,
                             SolveCounter* counter) {
  const std::size_t n = stations.size();
  if (n < 4) {
    throw LocalizationError("transform_to_nlos: at least 4 stations required");
  }
  if (ranges.size() != n) {
    throw LocalizationError("transform_to_nlos: range count does not match station count");
  }

  // Full-set solution seeds the leave-one-out sub-solves.
  Point2 sub_init = init;
  try {
    sub_init = solve(stations, ranges, init, taylor, counter).position;
  } catch (const LocalizationError&) {
    // Fall back to the caller's guess if the full-set solve fails.
  }

  // Solve every test combination and keep the one that fits its own ranges
  // best. That combination is the one least contaminated by NLOS; its
  // estimate anchors the whole NLOS vector, so stations whose ranges agree
  // with it map to (near) zero.
  double best_residual = std::numeric_limits<double>::infinity();
  Point2 best_position{};
  for (std::size_t i = 0; i < n; ++i) {
    const StationSet sub_stations = drop_station(stations, i);
    const RangeSet sub_ranges = drop_range(ranges, i);
    const TaylorConfig sub_config = drop_variance(taylor, i);
    try {
      const PositionEstimate est = solve(sub_stations, sub_ranges, sub_init, sub_config, counter);
      const double normalized =
          residual_sum_squares(sub_stations, sub_ranges, est.position) /
          static_cast<double>(n - 1);
      if (normalized < best_residual) {
        best_residual = normalized;
        best_position = est.position;
      }
    } catch (const LocalizationError& e) {
      throw TransformError("transform_to_nlos: sub-solve failed leaving out station " +
                               std::to_string(i) + ": " + e.what(),
                           i);
    }
  }

  NlosVector nl = NlosVector::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    nl.values[i] = ranges[i] - true_range(stations[i], best_position);
  }
  return nl;
}

NlosVector threshold_largest(const NlosVector& nl) {
  if (nl.size() == 0) {
    throw LocalizationError("threshold_largest: empty vector");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < nl.size(); ++i) {
    if (std::abs(nl[i]) > std::abs(nl[best])) best = i;
  }
  NlosVector out = NlosVector::zeros(nl.size());
  out.values[best] = nl[best];
  return out;
}

SrniResult srni_solve(const RangeSet& ranges, const StationSet& stations,
                      const SrniConfig& config, const Point2& init,
                      SolveCounter* counter) {
  const std::size_t n = stations.size();
  if (config.iter_max < 1) {
    throw LocalizationError("srni_solve: iter_max must be >= 1");
  }

  // Components at noise scale are left alone; accumulating them would chase
  // measurement noise instead of NLOS bias and destabilize extra rounds.
  const double update_gate = 3.0 * config.detection_threshold;

  NlosVector nl = NlosVector::zeros(n);
  RangeSet corrected = ranges;
  for (int iter = 0; iter < config.iter_max; ++iter) {
    for (std::size_t i = 0; i < n; ++i) corrected.ranges[i] = ranges[i] - nl[i];
    const NlosVector estimate = transform_to_nlos(corrected, stations, config.taylor, init, counter);
    const NlosVector largest = threshold_largest(estimate);
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(largest[i]) > update_gate) nl.values[i] += largest[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) corrected.ranges[i] = ranges[i] - nl[i];

  SrniResult result;
  result.position = solve(stations, corrected, init, config.taylor, counter).position;
  result.nlos = nl;
  for (std::size_t i = 0; i < n; ++i) {
    if (nl[i] > config.detection_threshold) ++result.detected_count;
  }
  result.within_valid_zone = valid_zone(result.detected_count, n);
  return result;
}

bool valid_zone(std::size_t detected_count, std::size_t n_stations) {
  if (n_stations < 3) {
    throw LocalizationError("valid_zone: at least 3 stations required");
  }
  // detected_count < (N - 3) / 2, without floating point.
  return 2 * detected_count < n_stations - 3;
}

}  // namespace nlosloc
