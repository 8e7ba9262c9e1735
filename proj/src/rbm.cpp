#include "rbmtail/rbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rbmtail/kernels.hpp"

namespace rbmtail {

namespace {

void check_subsample_size(std::size_t s, std::size_t n, const char* who) {
  if (s < 2 || s > n) {
    throw DomainError(std::string(who) + ": need 2 <= s <= n (s=" + std::to_string(s) +
                      ", n=" + std::to_string(n) + ")");
  }
}

std::vector<double> sorted_logs(const Sample& sample) {
  std::vector<double> logs;
  logs.reserve(sample.size());
  for (double x : sample.values()) logs.push_back(std::log(x));
  return logs;
}

}  // namespace

WeightVector subsample_max_weights(std::size_t n, std::size_t s) {
  if (s < 1 || s > n) {
    throw DomainError("subsample_max_weights: need 1 <= s <= n");
  }
  WeightVector out{n, s, std::vector<double>(n - s + 1)};
  double w = static_cast<double>(s) / static_cast<double>(n);
  out.w[0] = w;
  for (std::size_t j = 1; j <= n - s; ++j) {
    w *= static_cast<double>(n - j - s + 1) / static_cast<double>(n - j);
    out.w[j] = w;
  }
  return out;
}

MProfile mean_log_max_profile(const Sample& sample) {
  const auto logs = sorted_logs(sample);
  MProfile p{std::vector<double>(logs.size())};
  kernels::omp::log_max_profile(logs, p.m);
  return p;
}

double rbm_at(const Sample& sample, std::size_t s) {
  check_subsample_size(s, sample.size(), "rbm_at");
  const auto d = sample.top_log_spacings();
  return kernels::rbm_gamma(d, s);
}

double brute_force_rbm(const Sample& sample, std::size_t s) {
  const std::size_t n = sample.size();
  check_subsample_size(s, n, "brute_force_rbm");
  if (n > 20) {
    throw TooLargeToEnumerate("brute_force_rbm: n = " + std::to_string(n) + " exceeds 20");
  }
  const auto x = sample.values();
  // Lexicographic walk over ascending index tuples; since the data are sorted
  // the last two indices hold the top two values of the subset.
  std::vector<std::size_t> idx(s);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  double sum = 0.0;
  std::size_t count = 0;
  for (;;) {
    sum += std::log(x[idx[s - 1]]) - std::log(x[idx[s - 2]]);
    ++count;
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return sum / static_cast<double>(count);
}

EstimatorPath rbm_path(const Sample& sample) {
  const std::size_t n = sample.size();
  const auto d = sample.top_log_spacings();
  std::vector<double> gammas(n - 1);
  kernels::omp::rbm_gammas(d, gammas);

  EstimatorPath path{EstimatorId::rbm, {}};
  path.points.reserve(n - 1);
  for (std::size_t s = n; s >= 2; --s) {
    path.points.push_back({s, k_of_s(s, n), gammas[s - 2]});
  }
  return path;
}

TailEstimate select_threshold(const EstimatorPath& path, const ThresholdRule& rule) {
  const auto& pts = path.points;
  if (pts.size() < 2) {
    throw PathTooShort("select_threshold: path needs at least 2 points");
  }
  // An all-zero path (constant data) has a flat objective; report the largest k.
  if (std::all_of(pts.begin(), pts.end(), [](const ThresholdPoint& p) { return p.gamma_hat == 0.0; })) {
    const auto& p = pts.back();
    return TailEstimate::at(0.0, p.k, p.s != 0 ? std::optional<std::size_t>(p.s) : std::nullopt);
  }

  std::size_t first = 1;
  while (first < pts.size() && pts[first].k < rule.min_k) ++first;
  if (first == pts.size()) first = 1;

  std::size_t best = first;
  double best_obj = std::numeric_limits<double>::infinity();
  for (std::size_t i = first; i < pts.size(); ++i) {
    const double slope = (pts[i].gamma_hat - pts[i - 1].gamma_hat) /
                         (std::log(pts[i].k) - std::log(pts[i - 1].k));
    const double obj = slope * slope + pts[i].gamma_hat * pts[i].gamma_hat / (2.0 * pts[i].k);
    if (obj < best_obj) {
      best_obj = obj;
      best = i;
    }
  }
  const auto& p = pts[best];
  std::optional<std::size_t> s;
  if (p.s != 0) s = p.s;
  return TailEstimate::at(p.gamma_hat, p.k, s);
}

TailEstimate rbm_estimate(const Sample& sample, const ThresholdRule& rule) {
  return select_threshold(rbm_path(sample), rule);
}

}  // namespace rbmtail
