#ifndef NLOSLOC_GEOMETRY_HPP_
#define NLOSLOC_GEOMETRY_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nlosloc {

/// Base class for all domain errors raised by the library.
class LocalizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A 2-D position in meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

bool is_finite(const Point2& p);

/// Ordered list of base-station positions. Indices are stable; every
/// range/NLOS vector aligns positionally with this list.
struct StationSet {
  std::vector<Point2> stations;

  std::size_t size() const { return stations.size(); }
  const Point2& operator[](std::size_t i) const { return stations[i]; }
};

/// Per-station measured ranges, aligned with a StationSet.
struct RangeSet {
  std::vector<double> ranges;

  std::size_t size() const { return ranges.size(); }
  double operator[](std::size_t i) const { return ranges[i]; }
};

/// Per-station NLOS biases, aligned with a StationSet. Entries stay signed;
/// estimated vectors may carry negative components.
struct NlosVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }

  static NlosVector zeros(std::size_t n) { return NlosVector{std::vector<double>(n, 0.0)}; }
};

/// Seeded Gaussian range-noise model. The sample for a given
/// (seed, trial_index, station_index) triple is deterministic, so trials can
/// run on any number of workers without shared RNG state.
struct NoiseModel {
  double sigma = 0.0;  // meters
  std::uint64_t seed = 0;

  /// Standard normal draw for (trial, station), scaled by sigma.
  double sample(std::uint64_t trial_index, std::uint64_t station_index) const;
};

/// Euclidean distance between two points, meters.
double true_range(const Point2& a, const Point2& b);

/// Simulated range measurement: true range + Gaussian noise + NLOS bias,
/// clamped at zero. nl must have one entry per station, all >= 0.
RangeSet measure_ranges(const StationSet& stations, const Point2& ms,
                        const NlosVector& nl, const NoiseModel& noise,
                        std::uint64_t trial_index);

}  // namespace nlosloc

#endif  // NLOSLOC_GEOMETRY_HPP_
