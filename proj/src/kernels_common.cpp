#include "rbmtail/kernels.hpp"
#include "rbmtail/random.hpp"

#include <limits>
#include <vector>

namespace rbmtail::kernels {

double log_max_mean(std::span<const double> sorted_logs, std::size_t s) noexcept {
  const std::size_t n = sorted_logs.size();
  // w_1 = s/n, w_{j+1} = w_j (n-j-s+1)/(n-j); weights only shrink, so stop
  // once they leave the normal range (subnormal arithmetic is very slow).
  double w = static_cast<double>(s) / static_cast<double>(n);
  double acc = w * sorted_logs[n - 1];
  for (std::size_t j = 1; j <= n - s; ++j) {
    w *= static_cast<double>(n - j - s + 1) / static_cast<double>(n - j);
    if (w < std::numeric_limits<double>::min()) break;
    acc += w * sorted_logs[n - 1 - j];
  }
  return acc;
}

double rbm_gamma(std::span<const double> top_spacings, std::size_t s) noexcept {
  const std::size_t n = top_spacings.size() + 1;
  const std::size_t m = s - 1;
  // The t-th spacing from the top, log X_{n-t+1,n} - log X_{n-t,n}, enters
  // with weight t * q(n-t), where q(i) = C(i, m) / C(n, m) is the chance that
  // an m-subset lies entirely in the lowest i observations.
  double q = 1.0;
  double acc = 0.0;
  for (std::size_t t = 1; t <= n - m; ++t) {
    q *= static_cast<double>(n - t + 1 - m) / static_cast<double>(n - t + 1);
    if (q < std::numeric_limits<double>::min()) break;
    acc += static_cast<double>(t) * q * top_spacings[t - 1];
  }
  return acc * static_cast<double>(s) / static_cast<double>(n - s + 1);
}

void correlated_normal_path(std::span<const double> lower, std::size_t dim,
                            std::span<const double> mean, std::span<const double> scale,
                            std::uint64_t seed, std::size_t path, std::span<double> out) noexcept {
  random::Stream rng(random::stream_key(seed, path));
  // z is generated in full before the product so the draw order is fixed.
  thread_local std::vector<double> z;
  z.resize(dim);
  for (auto& v : z) v = rng.normal();
  for (std::size_t r = 0; r < dim; ++r) {
    const double* row = lower.data() + r * dim;
    double acc = 0.0;
    for (std::size_t c = 0; c <= r; ++c) acc += row[c] * z[c];
    out[r] = mean[r] + scale[r] * acc;
  }
}

}  // namespace rbmtail::kernels
