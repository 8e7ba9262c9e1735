#pragma once

#include <cstddef>
#include <vector>

#include "rbmtail/core.hpp"

namespace rbmtail {

/// Probability that the j-th largest observation is the maximum of a uniformly
/// drawn size-s subsample: w[j-1] = C(n-j, s-1) / C(n, s), j = 1..n-s+1.
struct WeightVector {
  std::size_t n = 0;
  std::size_t s = 0;
  std::vector<double> w;
};

WeightVector subsample_max_weights(std::size_t n, std::size_t s);

/// m[s-1] = M(s), the mean log maximum over all size-s subsamples.
struct MProfile {
  std::vector<double> m;
};

MProfile mean_log_max_profile(const Sample& sample);

/// Random block maxima estimate at subsample size s, s * (M(s) - M(s-1)).
double rbm_at(const Sample& sample, std::size_t s);

/// Same quantity by enumerating every size-s subset and averaging the log gap
/// between its two largest members. Limited to n <= 20.
double brute_force_rbm(const Sample& sample, std::size_t s);

/// Estimates for s = n, n-1, ..., 2, i.e. ascending k = 2n/s.
EstimatorPath rbm_path(const Sample& sample);

struct ThresholdRule {
  /// Smallest k eligible for selection. The default 4 keeps subsamples to at
  /// most half the data; at k < 4 the plug-in penalty is dominated by noise in
  /// gamma_hat itself. 0 makes every point with a left neighbour eligible.
  double min_k = 4.0;
};

/**
 * Automatic threshold for a smooth estimator path.
 *
 * Minimises, over every point with a left neighbour and k_i >= rule.min_k,
 *
 *   ((g_i - g_{i-1}) / (log k_i - log k_{i-1}))^2 + g_i^2 / (2 k_i),
 *
 * i.e. the squared slope in log k plus a variance penalty. If no point
 * satisfies the k bound, every point with a left neighbour is eligible. Ties
 * go to the smaller k. Throws PathTooShort for fewer than two points.
 */
TailEstimate select_threshold(const EstimatorPath& path, const ThresholdRule& rule = {});

/// select_threshold(rbm_path(sample), rule).
TailEstimate rbm_estimate(const Sample& sample, const ThresholdRule& rule = {});

}  // namespace rbmtail
