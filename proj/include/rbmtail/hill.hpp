#pragma once

#include <cstddef>
#include <vector>

#include "rbmtail/core.hpp"

namespace rbmtail {

/// Hill estimator on the top k + 1 order statistics, 1 <= k <= n - 1.
double hill(const Sample& sample, std::size_t k);

/// Hill estimator averaged over k' in (k, min(2k, n-1)].
double smoohill(const Sample& sample, std::size_t k);

/// hill(sample, k) for k = 1..n-1, in O(n).
std::vector<double> hill_all(const Sample& sample);

/// Nearest admissible Hill order count for a real threshold: round(k) clamped
/// to [1, n-1].
std::size_t hill_order(double k, std::size_t n);

/// Hill and smooHill evaluated at hill_order(k) for each point of `grid`.
/// smooHill points whose window is empty are omitted.
EstimatorPath hill_path_on(const Sample& sample, const EstimatorPath& grid);
EstimatorPath smoohill_path_on(const Sample& sample, const EstimatorPath& grid);

/// Guillou-Hall bias diagnostic statistics, exposed for inspection.
struct GuillouHallTrace {
  std::vector<double> t;  // t[k-1] = T(k), k = 1..n-1
  std::vector<double> q;  // q[k-1] = Q(k) where defined, NaN elsewhere
  std::size_t k_min = 0;
  std::size_t k_max = 0;
};

inline constexpr double kGuillouHallCritical = 1.25;

GuillouHallTrace guillou_hall_trace(const Sample& sample);

/// Hill estimate at the Guillou-Hall threshold. Requires n >= 4. When the
/// diagnostic never flags bias the largest admissible k is used and
/// `warning` is set.
TailEstimate gh_threshold(const Sample& sample);

// ---------------------------------------------------------------------------
// Asymptotic limit laws under the second-order condition
// ---------------------------------------------------------------------------

/// Normal limit of sqrt(k) (estimator at a k - gamma): mean and variance.
struct LimitLaw {
  double mean_shift = 0.0;
  double variance = 0.0;
};

/// RBM-to-Hill asymptotic bias ratio at equal variance, 2^rho Gamma(1-rho) (1-rho).
double asymptotic_bias_ratio(double rho);

/// N(lambda Gamma(1-rho) (a/2)^{-rho}, gamma^2 / a).
LimitLaw rbm_limit(double a, const SecondOrderModel& model);

/// N(lambda a^{-rho} / (1-rho), gamma^2 / a).
LimitLaw hill_limit(double a, const SecondOrderModel& model);

/// Limiting k Cov[RBM at a_i k, RBM at a_j k] = 2 gamma^2 / (a_i + a_j).
double rbm_limit_cov(double a_i, double a_j, double gamma);

}  // namespace rbmtail
