#include "nlosloc/imat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace nlosloc {

namespace {

void hard_threshold(std::vector<double>& coeffs, double threshold) {
  for (double& c : coeffs) {
    if (std::abs(c) < threshold) c = 0.0;
  }
}

void keep_largest_k(std::vector<double>& coeffs, std::size_t k) {
  std::vector<std::size_t> order(coeffs.size());
  std::iota(order.begin(), order.end(), 0);
  // Ties broken by lowest index.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(coeffs[a]) > std::abs(coeffs[b]);
  });
  std::vector<double> out(coeffs.size(), 0.0);
  for (std::size_t i = 0; i < std::min(k, coeffs.size()); ++i) {
    out[order[i]] = coeffs[order[i]];
  }
  coeffs = std::move(out);
}

}  // namespace

std::vector<double> imat_recover(const MaskedObservation& obs,
                                 const SparseDomainPair& domain,
                                 const ThresholdPolicy& policy, int iter_max) {
  const std::size_t m = obs.values.size();
  if (obs.mask.size() != m) {
    throw LocalizationError("imat_recover: mask length does not match values");
  }
  if (std::none_of(obs.mask.begin(), obs.mask.end(), [](bool b) { return b; })) {
    throw LocalizationError("imat_recover: mask has no observed entries");
  }
  if (iter_max < 1) {
    throw LocalizationError("imat_recover: iter_max must be >= 1");
  }

  std::vector<double> x = obs.values;

  double decay_t0 = 0.0;
  if (const auto* decay = std::get_if<GeometricDecay>(&policy)) {
    decay_t0 = decay->initial_scale;
    if (decay_t0 <= 0.0) {
      const std::vector<double> x0 = domain.forward(x);
      for (double c : x0) decay_t0 = std::max(decay_t0, std::abs(c));
    }
  }

  for (int iter = 0; iter < iter_max; ++iter) {
    std::vector<double> coeffs = domain.forward(x);
    if (const auto* decay = std::get_if<GeometricDecay>(&policy)) {
      hard_threshold(coeffs, decay_t0 * std::exp(-decay->alpha * iter));
    } else {
      keep_largest_k(coeffs, std::get<KeepLargestK>(policy).k);
    }
    x = domain.inverse(coeffs);
    if (x.size() != m) {
      throw LocalizationError("imat_recover: transform pair changed signal length");
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (obs.mask[i]) x[i] = obs.values[i];
    }
  }
  return x;
}

std::size_t required_measurements(std::size_t sparsity_k) { return 2 * sparsity_k; }

namespace {

// Relative magnitude of the (k+1)-th largest coefficient: zero (to within
// tolerance) certifies a k-sparse, observation-consistent candidate.
double sparsity_defect(const std::vector<double>& coeffs, std::size_t k) {
  std::vector<double> mags(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) mags[i] = std::abs(coeffs[i]);
  std::sort(mags.begin(), mags.end(), std::greater<>());
  if (k >= mags.size() || mags[0] == 0.0) return 0.0;
  return mags[k] / mags[0];
}

}  // namespace

std::vector<double> imat_recover_sparse(const MaskedObservation& obs,
                                        const SparseDomainPair& domain,
                                        std::size_t sparsity_k,
                                        const SparseRecoveryConfig& config) {
  const std::size_t m = obs.values.size();
  if (sparsity_k < 1) {
    throw LocalizationError("imat_recover_sparse: sparsity_k must be >= 1");
  }

  // Annealing ladder: generous support first so the observation can pull
  // energy toward the right indices, then prune down to the target.
  std::vector<std::size_t> ladder;
  for (std::size_t k : {12u, 10u, 8u, 6u, 4u, 3u, 2u, 1u}) {
    if (k >= sparsity_k && k < m) ladder.push_back(k);
  }
  if (ladder.empty() || ladder.back() != sparsity_k) ladder.push_back(sparsity_k);

  double fill_scale = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (obs.mask[i]) fill_scale = std::max(fill_scale, std::abs(obs.values[i]));
  }
  const NoiseModel restart_noise{fill_scale, config.seed};

  std::vector<double> best;
  double best_defect = std::numeric_limits<double>::infinity();
  for (std::size_t restart = 0; restart <= config.max_restarts; ++restart) {
    MaskedObservation warm = obs;
    if (restart > 0) {
      for (std::size_t i = 0; i < m; ++i) {
        if (!obs.mask[i]) warm.values[i] = restart_noise.sample(restart, i);
      }
    }
    for (std::size_t stage = 0; stage < ladder.size(); ++stage) {
      const int iters = stage + 1 == ladder.size() ? config.final_stage_iterations
                                                   : config.stage_iterations;
      warm.values = imat_recover(warm, domain, KeepLargestK{ladder[stage]}, iters);
    }
    const double defect = sparsity_defect(domain.forward(warm.values), sparsity_k);
    if (defect < best_defect) {
      best_defect = defect;
      best = warm.values;
    }
    if (best_defect <= config.certificate_tolerance) break;
  }
  return best;
}

}  // namespace nlosloc
