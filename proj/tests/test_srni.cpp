#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nlosloc/simkit.hpp"
#include "nlosloc/srni.hpp"
#include "nlosloc/taylor.hpp"
#include "oracles.hpp"

using namespace nlosloc;

namespace {

RangeSet los_ranges(const StationSet& stations, const Point2& ms) {
  RangeSet r;
  for (const Point2& bs : stations.stations) r.ranges.push_back(true_range(bs, ms));
  return r;
}

}  // namespace

TEST_CASE("transform_to_nlos is zero for noiseless LOS ranges") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const NlosVector nl = transform_to_nlos(los_ranges(stations, ms), stations, {}, ms);
  for (double v : nl.values) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("transform_to_nlos isolates a single NLOS station") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(stations, ms);
  ranges.ranges[0] += 1000.0;
  const NlosVector nl = transform_to_nlos(ranges, stations, {}, ms);
  CHECK(std::abs(nl[0] - 1000.0) < 1e-6);
  for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(nl[i]) < 1e-6);
}

TEST_CASE("transform_to_nlos ranks two NLOS stations correctly") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(stations, ms);
  ranges.ranges[0] += 1000.0;
  ranges.ranges[1] += 500.0;
  const NlosVector nl = transform_to_nlos(ranges, stations, {}, ms);

  // Oracle: solve each leave-one-out LS problem by grid refinement, pick
  // the combination with the smallest normalized residual, and anchor the
  // expected NLOS vector on its estimate.
  double best_res = 1e300;
  Point2 best_est{};
  for (std::size_t skip = 0; skip < 8; ++skip) {
    StationSet sub_s;
    RangeSet sub_r;
    for (std::size_t i = 0; i < 8; ++i) {
      if (i == skip) continue;
      sub_s.stations.push_back(stations[i]);
      sub_r.ranges.push_back(ranges[i]);
    }
    const Point2 est = oracles::grid_refine_min(sub_s, sub_r, ms, 3000);
    const double res = residual_sum_squares(sub_s, sub_r, est) / 7.0;
    if (res < best_res) {
      best_res = res;
      best_est = est;
    }
  }
  for (std::size_t i = 0; i < 8; ++i) {
    const double expected = ranges[i] - true_range(stations[i], best_est);
    CHECK(nl[i] == doctest::Approx(expected).epsilon(1e-4));
  }

  // The two largest magnitudes sit at the two NLOS stations.
  std::size_t first = 0, second = 1;
  if (std::abs(nl[second]) > std::abs(nl[first])) std::swap(first, second);
  for (std::size_t i = 2; i < 8; ++i) {
    if (std::abs(nl[i]) > std::abs(nl[first])) {
      second = first;
      first = i;
    } else if (std::abs(nl[i]) > std::abs(nl[second])) {
      second = i;
    }
  }
  CHECK(((first == 0 && second == 1) || (first == 1 && second == 0)));
}

TEST_CASE("transform_to_nlos requires at least four stations") {
  const StationSet three{{{0, 0}, {1000, 0}, {0, 1000}}};
  RangeSet r{{500, 500, 500}};
  CHECK_THROWS_AS(transform_to_nlos(r, three, {}, {100, 100}), LocalizationError);
}

TEST_CASE("threshold_largest keeps the largest magnitude with its sign") {
  CHECK(threshold_largest(NlosVector{{1000, -500, 200}}).values ==
        std::vector<double>{1000, 0, 0});
  CHECK(threshold_largest(NlosVector{{5, -5, 0}}).values == std::vector<double>{5, 0, 0});
  CHECK(threshold_largest(NlosVector{{0, 0, 0}}).values == std::vector<double>{0, 0, 0});
  CHECK(threshold_largest(NlosVector{{-3, 2}}).values == std::vector<double>{-3, 0});
  CHECK_THROWS_AS(threshold_largest(NlosVector{{}}), LocalizationError);
}

TEST_CASE("valid_zone boundary") {
  CHECK(valid_zone(2, 8));
  CHECK_FALSE(valid_zone(3, 8));
  CHECK(valid_zone(0, 4));
  CHECK_FALSE(valid_zone(1, 4));
  CHECK_FALSE(valid_zone(0, 3));
}

TEST_CASE("srni recovers exactly from a single noiseless NLOS station") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  for (std::size_t nlos_idx = 0; nlos_idx < 8; ++nlos_idx) {
    RangeSet ranges = los_ranges(stations, ms);
    ranges.ranges[nlos_idx] += 1000.0;
    const SrniResult res = srni_solve(ranges, stations, SrniConfig::for_sigma(0), ms);
    CHECK(true_range(res.position, ms) < 1e-6);
    CHECK(std::abs(res.nlos[nlos_idx] - 1000.0) < 1e-6);
    CHECK(res.detected_count == 1);
    CHECK(res.within_valid_zone);
  }
}

TEST_CASE("srni on noiseless LOS detects nothing") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const SrniResult res = srni_solve(los_ranges(stations, ms), stations,
                                    SrniConfig::for_sigma(0), ms);
  CHECK(true_range(res.position, ms) < 1e-6);
  CHECK(res.detected_count == 0);
}

TEST_CASE("srni accumulator support grows at most one index per round") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(stations, ms);
  ranges.ranges[0] += 1000.0;
  ranges.ranges[1] += 500.0;
  for (int iters = 1; iters <= 6; ++iters) {
    SrniConfig config = SrniConfig::for_sigma(0);
    config.iter_max = iters;
    const SrniResult res = srni_solve(ranges, stations, config, ms);
    int nonzero = 0;
    for (double v : res.nlos.values) {
      if (v != 0.0) ++nonzero;
    }
    CHECK(nonzero <= iters);
  }
}

TEST_CASE("srni position error does not grow with extra rounds (noiseless single NLOS)") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  RangeSet ranges = los_ranges(stations, ms);
  ranges.ranges[2] += 800.0;
  double prev = 1e18;
  for (int iters = 1; iters <= 8; ++iters) {
    SrniConfig config = SrniConfig::for_sigma(0);
    config.iter_max = iters;
    const SrniResult res = srni_solve(ranges, stations, config, ms);
    const double err = true_range(res.position, ms);
    CHECK(err <= prev + 1e-9);
    prev = err;
  }
}

TEST_CASE("srni is deterministic") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const RangeSet ranges =
      measure_ranges(stations, ms, NlosVector{{1000, 500, 0, 0, 0, 0, 0, 0}}, {60.0, 77}, 3);
  const SrniResult a = srni_solve(ranges, stations, SrniConfig::for_sigma(60), ms);
  const SrniResult b = srni_solve(ranges, stations, SrniConfig::for_sigma(60), ms);
  CHECK(a.position.x == b.position.x);
  CHECK(a.position.y == b.position.y);
  CHECK(a.nlos.values == b.nlos.values);
  CHECK(a.detected_count == b.detected_count);
}

TEST_CASE("srni solver-invocation count is iter_max * (N + 1) + 1") {
  const Point2 ms{2000, 1000};
  for (std::size_t n = 5; n <= 10; ++n) {
    const StationSet stations = stations_for_count(reference_stations(), n);
    NlosVector nl = NlosVector::zeros(n);
    nl.values[0] = 1000;
    const RangeSet ranges = measure_ranges(stations, ms, nl, {60.0, 13}, 0);
    SolveCounter counter;
    SrniConfig config = SrniConfig::for_sigma(60);
    srni_solve(ranges, stations, config, ms, &counter);
    CHECK(counter.count == static_cast<std::uint64_t>(config.iter_max) * (n + 1) + 1);
  }
}

TEST_CASE("srni beats plain LS under noise with two NLOS stations") {
  const StationSet stations = reference_stations();
  const Point2 ms{2000, 1000};
  const NlosVector nl{{1000, 500, 0, 0, 0, 0, 0, 0}};
  const NoiseModel noise{60.0, 404};
  double srni_sq = 0.0, ls_sq = 0.0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    const RangeSet ranges = measure_ranges(stations, ms, nl, noise, t);
    const SrniResult res = srni_solve(ranges, stations, SrniConfig::for_sigma(60), ms);
    const PositionEstimate ls = solve(stations, ranges, ms, {});
    srni_sq += std::pow(true_range(res.position, ms), 2);
    ls_sq += std::pow(true_range(ls.position, ms), 2);
  }
  CHECK(std::sqrt(srni_sq / trials) < std::sqrt(ls_sq / trials));
}
