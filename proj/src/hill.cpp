#include "rbmtail/hill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rbmtail {

namespace {

void check_hill_order(std::size_t k, std::size_t n) {
  if (k < 1 || k > n - 1) {
    throw DomainError("hill: need 1 <= k <= n-1 (k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
}

// Scaled log spacings U_i = i (log X_{n-i+1,n} - log X_{n-i,n}), i = 1..n-1.
// hill(k) is the mean of U_1..U_k.
std::vector<double> scaled_spacings(const Sample& sample) {
  auto u = sample.top_log_spacings();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= static_cast<double>(i + 1);
  return u;
}

}  // namespace

double hill(const Sample& sample, std::size_t k) {
  const auto x = sample.values();
  const std::size_t n = x.size();
  check_hill_order(k, n);
  const double base = x[n - k - 1];
  double acc = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    acc += std::log1p((x[n - 1 - j] - base) / base);
  }
  return acc / static_cast<double>(k);
}

std::vector<double> hill_all(const Sample& sample) {
  const auto u = scaled_spacings(sample);
  std::vector<double> out(u.size());
  double acc = 0.0;
  for (std::size_t k = 1; k <= u.size(); ++k) {
    acc += u[k - 1];
    out[k - 1] = acc / static_cast<double>(k);
  }
  return out;
}

double smoohill(const Sample& sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 1) throw DomainError("smoohill: need k >= 1");
  const std::size_t hi = std::min(2 * k, n - 1);
  if (hi <= k) {
    throw DomainError("smoohill: empty window (k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ")");
  }
  double acc = 0.0;
  for (std::size_t j = k + 1; j <= hi; ++j) acc += hill(sample, j);
  return acc / static_cast<double>(hi - k);
}

std::size_t hill_order(double k, std::size_t n) {
  if (n < 2) throw DomainError("hill_order: need n >= 2");
  const double r = std::round(k);
  return static_cast<std::size_t>(std::clamp(r, 1.0, static_cast<double>(n - 1)));
}

EstimatorPath hill_path_on(const Sample& sample, const EstimatorPath& grid) {
  const auto all = hill_all(sample);
  EstimatorPath out{EstimatorId::hill, {}};
  out.points.reserve(grid.points.size());
  for (const auto& p : grid.points) {
    out.points.push_back({p.s, p.k, all[hill_order(p.k, sample.size()) - 1]});
  }
  return out;
}

EstimatorPath smoohill_path_on(const Sample& sample, const EstimatorPath& grid) {
  const auto all = hill_all(sample);
  const std::size_t n = sample.size();
  EstimatorPath out{EstimatorId::smoohill, {}};
  for (const auto& p : grid.points) {
    const std::size_t k = hill_order(p.k, n);
    const std::size_t hi = std::min(2 * k, n - 1);
    if (hi <= k) continue;
    double acc = 0.0;
    for (std::size_t j = k + 1; j <= hi; ++j) acc += all[j - 1];
    out.points.push_back({p.s, p.k, acc / static_cast<double>(hi - k)});
  }
  return out;
}

// Guillou-Hall diagnostic. With U_i as above, under an exact Pareto
// tail the U_i are iid exponential with mean gamma, so the linear contrast
//
//   T(k) = sqrt(12/k) * sum_{i<=k} (i - (k+1)/2) U_i / sum_{i<=k} U_i
//
// is asymptotically N(0, 1); second-order bias tilts the U_i and drives T away
// from 0. T is smoothed by a centred moving root mean square,
//
//   Q(k) = sqrt( (2h+1)^{-1} sum_{j=k-h}^{k+h} T(j)^2 ),  h = floor(k/2),
//
// defined for 2 <= k with k + h <= n - 1. The threshold is the smallest k such
// that Q(t) > c_crit = 1.25 for every admissible t >= k.
GuillouHallTrace guillou_hall_trace(const Sample& sample) {
  const auto u = scaled_spacings(sample);
  const std::size_t m = u.size();  // n - 1
  GuillouHallTrace tr;
  tr.t.assign(m, 0.0);
  tr.q.assign(m, std::numeric_limits<double>::quiet_NaN());

  double s0 = 0.0;
  double s1 = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double kd = static_cast<double>(k);
    s0 += u[k - 1];
    s1 += kd * u[k - 1];
    // All spacings tied: no evidence either way.
    tr.t[k - 1] = s0 > 0.0 ? std::sqrt(12.0 / kd) * (s1 - 0.5 * (kd + 1.0) * s0) / s0 : 0.0;
  }

  std::vector<double> sq(m + 1, 0.0);  // prefix sums of T^2
  for (std::size_t k = 1; k <= m; ++k) sq[k] = sq[k - 1] + tr.t[k - 1] * tr.t[k - 1];

  tr.k_min = 2;
  tr.k_max = 0;
  for (std::size_t k = tr.k_min; k + k / 2 <= m; ++k) {
    const std::size_t h = k / 2;
    const double mean_sq = (sq[k + h] - sq[k - h - 1]) / static_cast<double>(2 * h + 1);
    tr.q[k - 1] = std::sqrt(mean_sq);
    tr.k_max = k;
  }
  return tr;
}

TailEstimate gh_threshold(const Sample& sample) {
  if (sample.size() < 4) {
    throw DomainError("gh_threshold: need n >= 4");
  }
  const auto tr = guillou_hall_trace(sample);
  std::size_t k_hat = tr.k_max + 1;
  while (k_hat > tr.k_min && tr.q[k_hat - 2] > kGuillouHallCritical) --k_hat;
  bool warning = false;
  if (k_hat > tr.k_max) {
    k_hat = tr.k_max;
    warning = true;
  }
  auto est = TailEstimate::at(hill(sample, k_hat), static_cast<double>(k_hat));
  est.warning = warning;
  return est;
}

// ---------------------------------------------------------------------------

double asymptotic_bias_ratio(double rho) {
  if (!(rho < 0.0)) throw DomainError("asymptotic_bias_ratio: need rho < 0");
  return std::exp2(rho) * std::tgamma(1.0 - rho) * (1.0 - rho);
}

namespace {
void check_limit_args(double a, const SecondOrderModel& model) {
  if (!(a > 0.0)) throw DomainError("limit law: need a > 0");
  model.validate();
  if (!(model.rho < 0.0)) throw DomainError("limit law: need rho < 0");
}
}  // namespace

LimitLaw rbm_limit(double a, const SecondOrderModel& model) {
  check_limit_args(a, model);
  const double rho = model.rho;
  return {model.lambda * std::tgamma(1.0 - rho) * std::pow(a / 2.0, -rho),
          model.gamma * model.gamma / a};
}

LimitLaw hill_limit(double a, const SecondOrderModel& model) {
  check_limit_args(a, model);
  const double rho = model.rho;
  return {model.lambda * std::pow(a, -rho) / (1.0 - rho), model.gamma * model.gamma / a};
}

double rbm_limit_cov(double a_i, double a_j, double gamma) {
  if (!(a_i > 0.0) || !(a_j > 0.0)) throw DomainError("rbm_limit_cov: need a_i, a_j > 0");
  return 2.0 * gamma * gamma / (a_i + a_j);
}

}  // namespace rbmtail
