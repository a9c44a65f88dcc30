#ifndef NLOSLOC_IMAT_HPP_
#define NLOSLOC_IMAT_HPP_

#include <functional>
#include <variant>
#include <vector>

#include "nlosloc/geometry.hpp"

namespace nlosloc {

/// Observation of a length-M signal where only the masked-in entries are
/// known. Masked-in values are authoritative and are restored verbatim on
/// every recovery iteration.
struct MaskedObservation {
  std::vector<double> values;
  std::vector<bool> mask;  // true = observed
};

/// Matched forward/inverse linear maps between signal space and the sparse
/// domain. inverse(forward(v)) must reproduce v to 1e-9 relative.
struct SparseDomainPair {
  std::function<std::vector<double>(const std::vector<double>&)> forward;
  std::function<std::vector<double>(const std::vector<double>&)> inverse;
};

/// Hard threshold with scale T0 * exp(-alpha * k) at iteration k.
struct GeometricDecay {
  double initial_scale;  // <= 0 means "max |forward(x0)|" at recovery start
  double alpha = 0.2;
};

/// Keep the k largest-magnitude coefficients, zero the rest.
struct KeepLargestK {
  std::size_t k;
};

using ThresholdPolicy = std::variant<GeometricDecay, KeepLargestK>;

/// IMAT sparse recovery: iterate transform -> threshold -> inverse transform
/// -> restore masked-in observations, iter_max rounds. Masked-in entries of
/// the result equal the observation exactly.
std::vector<double> imat_recover(const MaskedObservation& obs,
                                 const SparseDomainPair& domain,
                                 const ThresholdPolicy& policy, int iter_max);

/// Minimum observation count to recover a k-sparse signal with unknown
/// support: twice the sparsity.
std::size_t required_measurements(std::size_t sparsity_k);

/// Tuning for imat_recover_sparse. Restarts are deterministic given seed.
struct SparseRecoveryConfig {
  std::size_t max_restarts = 8;
  int stage_iterations = 150;        // per annealing stage above sparsity_k
  int final_stage_iterations = 400;  // at the target sparsity
  double certificate_tolerance = 1e-6;
  std::uint64_t seed = 0x1375;
};

/// Recover a signal known to be sparsity_k-sparse in the given domain.
/// Chains imat_recover stages with a decreasing KeepLargestK ladder,
/// warm-starting each stage from the last; the masked-in entries stay
/// authoritative throughout, so every stage honors the restoration
/// invariant. A candidate whose coefficients past the k largest are
/// negligible is observation-consistent and k-sparse, hence the unique
/// answer when the mask holds >= 2k informative samples; candidates that
/// fail that certificate trigger a restart with randomized unobserved
/// entries. Returns the best candidate found.
std::vector<double> imat_recover_sparse(const MaskedObservation& obs,
                                        const SparseDomainPair& domain,
                                        std::size_t sparsity_k,
                                        const SparseRecoveryConfig& config = {});

}  // namespace nlosloc

#endif  // NLOSLOC_IMAT_HPP_
