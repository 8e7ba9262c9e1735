#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rbmtail/core.hpp"

namespace rbmtail {

enum class DistKind { frechet, burr, student_t, log_gamma, u_inv_sq_log, pareto };

/**
 * Heavy-tailed test distribution.
 *
 * Spec strings (see parse_distribution):
 *   frechet:<alpha>   F(x) = exp(-x^{-alpha})
 *   burr:1:0.5:2      F(x) = 1 - (1 + sqrt(x))^{-2}
 *   t:<df>            Student-t, raw values (negative draws included)
 *   loggamma          density x^{-2} log x on x > 1
 *   uinvsqlog         X = U^{-2} (1 - log U), U uniform
 *   pareto:<gamma>    F(x) = 1 - x^{-1/gamma}, x >= 1
 */
struct Distribution {
  DistKind kind = DistKind::frechet;
  double param = 0.0;  // alpha, df or gamma; unused otherwise

  static Distribution frechet(double alpha);
  static Distribution burr();
  static Distribution student_t(double df);
  static Distribution log_gamma();
  static Distribution u_inv_sq_log();
  static Distribution pareto(double gamma);

  /// Canonical spec string; parse_distribution(id()) round-trips.
  std::string id() const;
};

/// Throws UnknownDistribution on anything outside the grammar above.
Distribution parse_distribution(std::string_view spec);

struct TruthValues {
  double gamma = 0.0;
  double rho = 0.0;  // -inf for the exact Pareto tail
};

TruthValues truth(const Distribution& dist);

/// Inverse CDF on (0, 1). Unsupported for log_gamma.
double quantile(const Distribution& dist, double u);

/// CDF; Unsupported for u_inv_sq_log (no closed form).
double cdf(const Distribution& dist, double x);

/// n iid draws from stream key `seed`.
std::vector<double> sample(const Distribution& dist, std::size_t n, std::uint64_t seed);

}  // namespace rbmtail
