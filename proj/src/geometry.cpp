#include "nlosloc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace nlosloc {

bool is_finite(const Point2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double true_range(const Point2& a, const Point2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1), never exactly 0.
double to_unit(std::uint64_t x) {
  return (static_cast<double>(x >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

}  // namespace

double NoiseModel::sample(std::uint64_t trial_index, std::uint64_t station_index) const {
  if (sigma == 0.0) return 0.0;
  // One independent stream per (seed, trial, station); Box-Muller keeps the
  // draw identical across platforms and standard libraries.
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ trial_index);
  h = splitmix64(h ^ station_index);
  const double u1 = to_unit(h);
  const double u2 = to_unit(splitmix64(h));
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return sigma * z;
}

RangeSet measure_ranges(const StationSet& stations, const Point2& ms,
                        const NlosVector& nl, const NoiseModel& noise,
                        std::uint64_t trial_index) {
  if (nl.size() != stations.size()) {
    throw LocalizationError("measure_ranges: NLOS vector length does not match station count");
  }
  RangeSet out;
  out.ranges.reserve(stations.size());
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const double r = true_range(stations[i], ms) + noise.sample(trial_index, i) + nl[i];
    out.ranges.push_back(std::max(r, 0.0));
  }
  return out;
}

}  // namespace nlosloc
