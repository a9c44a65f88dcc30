#ifndef NLOSLOC_TAYLOR_HPP_
#define NLOSLOC_TAYLOR_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nlosloc/geometry.hpp"

namespace nlosloc {

/// Guess (or iterate) coincides with a station; the range gradient is
/// undefined there.
class SingularityError : public LocalizationError {
 public:
  using LocalizationError::LocalizationError;
};

/// Normal matrix is rank deficient (e.g. all stations and the guess
/// collinear).
class DegenerateGeometryError : public LocalizationError {
 public:
  using LocalizationError::LocalizationError;
};

/// Iteration left the plausible region or produced non-finite values.
class DivergenceError : public LocalizationError {
 public:
  using LocalizationError::LocalizationError;
};

struct TaylorConfig {
  int max_iterations = 50;
  double delta_tolerance = 1e-6;  // meters
  // Empty = identity weighting; otherwise per-station measurement variances
  // (diagonal R of the weighted normal equations), all > 0.
  std::vector<double> variances;
};

/// One linearization step, with intermediates kept for inspection.
struct TaylorStep {
  std::vector<std::pair<double, double>> jacobian_rows;  // (a_ix, a_iy), unit norm
  std::vector<double> residuals;                         // z_i = r'_i - r_i(guess)
  std::pair<double, double> delta;                       // position correction
  std::vector<double> post_fit_residuals;                // z - A*delta
};

struct PositionEstimate {
  Point2 position;
  int iterations_used = 0;
  bool converged = false;
  double final_residual_norm = 0.0;  // ||z|| at the returned position
};

/// Counts full iterative solver invocations; used for the cost-accounting
/// comparisons between algorithms.
struct SolveCounter {
  std::uint64_t count = 0;
};

/// Unit-norm gradient of the range to `bs` evaluated at `guess`.
std::pair<double, double> jacobian_row(const Point2& bs, const Point2& guess);

/// One weighted least-squares linearization step. The 2x2 normal system is
/// solved in closed form.
TaylorStep taylor_step(const StationSet& stations, const RangeSet& ranges,
                       const Point2& guess, const TaylorConfig& config);

/// Iterated Taylor-series position estimate. Repeats taylor_step and applies
/// the correction until ||delta|| < delta_tolerance or max_iterations.
PositionEstimate solve(const StationSet& stations, const RangeSet& ranges,
                       const Point2& initial_guess, const TaylorConfig& config,
                       SolveCounter* counter = nullptr);

/// Sum of squared range residuals at a candidate position (the objective the
/// solver minimizes).
double residual_sum_squares(const StationSet& stations, const RangeSet& ranges,
                            const Point2& position);

}  // namespace nlosloc

#endif  // NLOSLOC_TAYLOR_HPP_
