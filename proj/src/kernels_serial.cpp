#include "rbmtail/kernels.hpp"

namespace rbmtail::kernels::serial {

void log_max_profile(std::span<const double> sorted_logs, std::span<double> out) {
  for (std::size_t s = 1; s <= sorted_logs.size(); ++s) {
    out[s - 1] = log_max_mean(sorted_logs, s);
  }
}

void rbm_gammas(std::span<const double> top_spacings, std::span<double> out) {
  const std::size_t n = top_spacings.size() + 1;
  for (std::size_t s = 2; s <= n; ++s) {
    out[s - 2] = rbm_gamma(top_spacings, s);
  }
}

void correlated_normals(std::span<const double> lower, std::size_t dim,
                        std::span<const double> mean, std::span<const double> scale,
                        std::uint64_t seed, std::size_t n_paths, std::span<double> out) {
  for (std::size_t p = 0; p < n_paths; ++p) {
    correlated_normal_path(lower, dim, mean, scale, seed, p, out.subspan(p * dim, dim));
  }
}

}  // namespace rbmtail::kernels::serial
