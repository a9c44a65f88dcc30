#include "nlosloc/taylor.hpp"

#include <cmath>
#include <string>

namespace nlosloc {

namespace {

constexpr double kSingularityEpsilon = 1e-9;   // meters
constexpr double kDeterminantGuard = 1e-12;    // relative
constexpr double kDivergenceRadius = 1e9;      // meters

}  // namespace

std::pair<double, double> jacobian_row(const Point2& bs, const Point2& guess) {
  const double d = true_range(bs, guess);
  if (d <= kSingularityEpsilon) {
    throw SingularityError("jacobian_row: guess coincides with a station");
  }
  return {(guess.x - bs.x) / d, (guess.y - bs.y) / d};
}

TaylorStep taylor_step(const StationSet& stations, const RangeSet& ranges,
                       const Point2& guess, const TaylorConfig& config) {
  const std::size_t n = stations.size();
  if (n < 3) {
    throw LocalizationError("taylor_step: at least 3 stations required");
  }
  if (ranges.size() != n) {
    throw LocalizationError("taylor_step: range count does not match station count");
  }
  if (!config.variances.empty() && config.variances.size() != n) {
    throw LocalizationError("taylor_step: variance count does not match station count");
  }

  TaylorStep step;
  step.jacobian_rows.reserve(n);
  step.residuals.reserve(n);

  // Accumulate the weighted 2x2 normal system A^T W A delta = A^T W z.
  double m00 = 0.0, m01 = 0.0, m11 = 0.0, b0 = 0.0, b1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [ax, ay] = jacobian_row(stations[i], guess);
    const double z = ranges[i] - true_range(stations[i], guess);
    const double w = config.variances.empty() ? 1.0 : 1.0 / config.variances[i];
    step.jacobian_rows.emplace_back(ax, ay);
    step.residuals.push_back(z);
    m00 += w * ax * ax;
    m01 += w * ax * ay;
    m11 += w * ay * ay;
    b0 += w * ax * z;
    b1 += w * ay * z;
  }

  const double det = m00 * m11 - m01 * m01;
  const double scale = std::max({std::abs(m00), std::abs(m01), std::abs(m11)});
  if (!(std::abs(det) > kDeterminantGuard * scale * scale)) {
    throw DegenerateGeometryError("taylor_step: degenerate geometry (normal matrix singular)");
  }
  step.delta = {(m11 * b0 - m01 * b1) / det, (m00 * b1 - m01 * b0) / det};

  step.post_fit_residuals.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [ax, ay] = step.jacobian_rows[i];
    step.post_fit_residuals.push_back(step.residuals[i] - ax * step.delta.first -
                                      ay * step.delta.second);
  }
  return step;
}

PositionEstimate solve(const StationSet& stations, const RangeSet& ranges,
                       const Point2& initial_guess, const TaylorConfig& config,
                       SolveCounter* counter) {
  if (counter != nullptr) ++counter->count;

  Point2 guess = initial_guess;
  PositionEstimate est;
  for (int iter = 1; iter <= config.max_iterations; ++iter) {
    const TaylorStep step = taylor_step(stations, ranges, guess, config);
    guess.x += step.delta.first;
    guess.y += step.delta.second;
    est.iterations_used = iter;

    if (!is_finite(guess) || std::hypot(guess.x, guess.y) > kDivergenceRadius) {
      throw DivergenceError("solve: iteration diverged");
    }
    if (std::hypot(step.delta.first, step.delta.second) < config.delta_tolerance) {
      est.converged = true;
      break;
    }
  }
  est.position = guess;
  est.final_residual_norm = std::sqrt(residual_sum_squares(stations, ranges, guess));
  return est;
}

double residual_sum_squares(const StationSet& stations, const RangeSet& ranges,
                            const Point2& position) {
  double ssr = 0.0;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    const double z = ranges[i] - true_range(stations[i], position);
    ssr += z * z;
  }
  return ssr;
}

}  // namespace nlosloc
