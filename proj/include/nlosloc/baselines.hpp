#ifndef NLOSLOC_BASELINES_HPP_
#define NLOSLOC_BASELINES_HPP_

#include <vector>

#include "nlosloc/geometry.hpp"
#include "nlosloc/taylor.hpp"

namespace nlosloc {

/// One station-subset solve inside the residual-weighting estimator.
struct CombinationEstimate {
  std::vector<std::size_t> station_indices;
  Point2 estimate;
  double residual = 0.0;             // sum of squared range residuals, m^2
  double normalized_residual = 0.0;  // residual / subset size
};

/// Min-max bounding-box localization: intersect per-station boxes
/// [coord - r, coord + r] per axis and return the midpoint. Well-defined
/// even when the intersection is empty (crossed bounds).
Point2 bounding_box_estimate(const StationSet& stations, const RangeSet& ranges);

/// Residual weighting (RWGH): solve every station subset of size 3..N and
/// combine the estimates weighted by inverse size-normalized residual. A
/// zero-residual subset short-circuits (noiseless case). Subsets whose solve
/// fails are skipped; if all fail, throws.
Point2 rwgh_estimate(const StationSet& stations, const RangeSet& ranges,
                     const TaylorConfig& taylor, const Point2& init,
                     SolveCounter* counter = nullptr,
                     std::vector<CombinationEstimate>* combinations = nullptr);

}  // namespace nlosloc

#endif  // NLOSLOC_BASELINES_HPP_
