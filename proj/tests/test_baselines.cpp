#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nlosloc/baselines.hpp"
#include "nlosloc/simkit.hpp"
#include "oracles.hpp"

using namespace nlosloc;

namespace {

RangeSet los_ranges(const StationSet& stations, const Point2& ms) {
  RangeSet r;
  for (const Point2& bs : stations.stations) r.ranges.push_back(true_range(bs, ms));
  return r;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::uint64_t expected_rwgh_solves(std::uint64_t n) {
  std::uint64_t total = 0;
  for (std::uint64_t k = 3; k <= n; ++k) total += binomial(n, k);
  return total;
}

}  // namespace

TEST_CASE("bounding box: symmetric configurations") {
  StationSet one{{{0, 0}}};
  const Point2 a = bounding_box_estimate(one, RangeSet{{100}});
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.y == doctest::Approx(0.0));

  StationSet two{{{-100, 0}, {100, 0}}};
  const Point2 b = bounding_box_estimate(two, RangeSet{{100, 100}});
  CHECK(b.x == doctest::Approx(0.0));
  CHECK(b.y == doctest::Approx(0.0));
}

TEST_CASE("bounding box on the reference geometry is biased but close") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const Point2 est = bounding_box_estimate(stations, los_ranges(stations, ms));
  // Frozen regression values from direct evaluation of the min-max midpoint.
  CHECK(est.x == doctest::Approx(2061.5528128).epsilon(1e-8));
  CHECK(est.y == doctest::Approx(842.9515024).epsilon(1e-8));
  CHECK(true_range(est, ms) > 1.0);
  CHECK(true_range(est, ms) < 500.0);
}

TEST_CASE("bounding box is translation-equivariant and order-invariant") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(stations, ms);
  ranges.ranges[0] += 300;  // make it asymmetric

  const Point2 base = bounding_box_estimate(stations, ranges);

  const Point2 shift{-750.5, 421.0};
  StationSet shifted = stations;
  for (Point2& p : shifted.stations) {
    p.x += shift.x;
    p.y += shift.y;
  }
  const Point2 moved = bounding_box_estimate(shifted, ranges);
  CHECK(moved.x == doctest::Approx(base.x + shift.x));
  CHECK(moved.y == doctest::Approx(base.y + shift.y));

  std::vector<std::size_t> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  StationSet perm_s;
  RangeSet perm_r;
  for (std::size_t i : perm) {
    perm_s.stations.push_back(stations[i]);
    perm_r.ranges.push_back(ranges[i]);
  }
  const Point2 permuted = bounding_box_estimate(perm_s, perm_r);
  CHECK(permuted.x == base.x);
  CHECK(permuted.y == base.y);
}

TEST_CASE("rwgh with exactly three stations equals the plain LS estimate") {
  StationSet three{{{6000, 0}, {3000, -6000}, {0, 5000}}};
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(three, ms);
  ranges.ranges[0] += 50;  // avoid the zero-residual short-circuit
  const Point2 rwgh = rwgh_estimate(three, ranges, {}, ms);
  const PositionEstimate ls = solve(three, ranges, ms, {});
  CHECK(rwgh.x == doctest::Approx(ls.position.x).epsilon(1e-9));
  CHECK(rwgh.y == doctest::Approx(ls.position.y).epsilon(1e-9));
}

TEST_CASE("rwgh is exact on noiseless LOS ranges") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const Point2 est = rwgh_estimate(stations, los_ranges(stations, ms), {}, ms);
  CHECK(true_range(est, ms) < 1e-6);
}

TEST_CASE("rwgh is exact under a single noiseless NLOS station") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(stations, ms);
  ranges.ranges[0] += 1000.0;
  const Point2 est = rwgh_estimate(stations, ranges, {}, ms);
  CHECK(true_range(est, ms) < 1e-6);
}

TEST_CASE("rwgh solver-invocation count is the full subset sum") {
  const Point2 ms{2000, 1000};
  for (std::size_t n = 4; n <= 10; ++n) {
    const StationSet stations = stations_for_count(reference_stations(), n);
    const RangeSet ranges =
        measure_ranges(stations, ms, NlosVector::zeros(n), {60.0, 55}, 0);
    SolveCounter counter;
    rwgh_estimate(stations, ranges, {}, ms, &counter);
    CHECK(counter.count == expected_rwgh_solves(n));
  }
  CHECK(expected_rwgh_solves(8) == 219);
}

TEST_CASE("rwgh is invariant to station ordering") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const RangeSet ranges =
      measure_ranges(stations, ms, NlosVector{{1000, 0, 0, 0, 0, 0, 0, 0}}, {60.0, 9}, 1);
  const Point2 base = rwgh_estimate(stations, ranges, {}, ms);

  std::vector<std::size_t> perm{3, 0, 6, 1, 7, 2, 5, 4};
  StationSet perm_s;
  RangeSet perm_r;
  for (std::size_t i : perm) {
    perm_s.stations.push_back(stations[i]);
    perm_r.ranges.push_back(ranges[i]);
  }
  const Point2 permuted = rwgh_estimate(perm_s, perm_r, {}, ms);
  CHECK(permuted.x == doctest::Approx(base.x).epsilon(1e-9));
  CHECK(permuted.y == doctest::Approx(base.y).epsilon(1e-9));
}

TEST_CASE("rwgh exposes per-combination residuals") {
  StationSet four{{{6000, 0}, {3000, -6000}, {0, 5000}, {-6000, -1000}}};
  const Point2 ms{2000, 1000};
  const RangeSet ranges = measure_ranges(four, ms, NlosVector::zeros(4), {60.0, 2}, 0);
  std::vector<CombinationEstimate> combos;
  rwgh_estimate(four, ranges, {}, ms, nullptr, &combos);
  CHECK(combos.size() == 5);  // C(4,3) + C(4,4)
  for (const CombinationEstimate& c : combos) {
    CHECK(c.residual >= 0.0);
    CHECK(c.normalized_residual ==
          doctest::Approx(c.residual / static_cast<double>(c.station_indices.size())));
  }
}
