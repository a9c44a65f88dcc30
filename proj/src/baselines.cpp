#include "nlosloc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlosloc {

namespace {

constexpr double kZeroResidualEpsilon = 1e-12;  // m^2 per station

// Visits subsets of {0..n-1} of each size 3..n in lexicographic order.
template <typename Visitor>
void for_each_subset(std::size_t n, Visitor&& visit) {
  std::vector<std::size_t> indices;
  for (std::size_t size = 3; size <= n; ++size) {
    indices.resize(size);
    for (std::size_t i = 0; i < size; ++i) indices[i] = i;
    while (true) {
      if (!visit(indices)) return;
      // Advance to the next combination.
      std::size_t i = size;
      while (i > 0 && indices[i - 1] == n - size + i - 1) --i;
      if (i == 0) break;
      ++indices[i - 1];
      for (std::size_t j = i; j < size; ++j) indices[j] = indices[j - 1] + 1;
    }
  }
}

}  // namespace

Point2 bounding_box_estimate(const StationSet& stations, const RangeSet& ranges) {
  if (stations.size() == 0 || ranges.size() != stations.size()) {
    throw LocalizationError("bounding_box_estimate: invalid station/range counts");
  }
  double low_x = -std::numeric_limits<double>::infinity();
  double high_x = std::numeric_limits<double>::infinity();
  double low_y = -std::numeric_limits<double>::infinity();
  double high_y = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < stations.size(); ++i) {
    low_x = std::max(low_x, stations[i].x - ranges[i]);
    high_x = std::min(high_x, stations[i].x + ranges[i]);
    low_y = std::max(low_y, stations[i].y - ranges[i]);
    high_y = std::min(high_y, stations[i].y + ranges[i]);
  }
  return {(low_x + high_x) / 2.0, (low_y + high_y) / 2.0};
}

Point2 rwgh_estimate(const StationSet& stations, const RangeSet& ranges,
                     const TaylorConfig& taylor, const Point2& init,
                     SolveCounter* counter,
                     std::vector<CombinationEstimate>* combinations) {
  const std::size_t n = stations.size();
  if (n < 3) {
    throw LocalizationError("rwgh_estimate: at least 3 stations required");
  }
  if (ranges.size() != n) {
    throw LocalizationError("rwgh_estimate: range count does not match station count");
  }

  double weight_sum = 0.0;
  double wx = 0.0, wy = 0.0;
  bool any_success = false;
  bool short_circuit = false;
  Point2 exact{};

  for_each_subset(n, [&](const std::vector<std::size_t>& subset) {
    StationSet sub_stations;
    RangeSet sub_ranges;
    TaylorConfig sub_config = taylor;
    sub_config.variances.clear();
    for (std::size_t i : subset) {
      sub_stations.stations.push_back(stations[i]);
      sub_ranges.ranges.push_back(ranges[i]);
      if (!taylor.variances.empty()) sub_config.variances.push_back(taylor.variances[i]);
    }
    PositionEstimate est;
    try {
      est = solve(sub_stations, sub_ranges, init, sub_config, counter);
    } catch (const LocalizationError&) {
      return true;  // skip failed subset
    }
    const double residual = residual_sum_squares(sub_stations, sub_ranges, est.position);
    const double normalized = residual / static_cast<double>(subset.size());
    if (combinations != nullptr) {
      combinations->push_back({subset, est.position, residual, normalized});
    }
    any_success = true;
    if (normalized < kZeroResidualEpsilon) {
      exact = est.position;
      short_circuit = true;
      return false;
    }
    const double weight = 1.0 / normalized;
    weight_sum += weight;
    wx += weight * est.position.x;
    wy += weight * est.position.y;
    return true;
  });

  if (short_circuit) return exact;
  if (!any_success) {
    throw LocalizationError("rwgh_estimate: every station subset failed to solve");
  }
  return {wx / weight_sum, wy / weight_sum};
}

}  // namespace nlosloc
