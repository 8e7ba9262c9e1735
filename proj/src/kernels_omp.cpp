#include <omp.h>

#include <cstdint>

#include "rbmtail/kernels.hpp"

namespace rbmtail::kernels::omp {

// Cost per s is O(n - s), so the profile loops use dynamic scheduling.

void log_max_profile(std::span<const double> sorted_logs, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(sorted_logs.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 1; s <= n; ++s) {
    out[s - 1] = log_max_mean(sorted_logs, static_cast<std::size_t>(s));
  }
}

void rbm_gammas(std::span<const double> top_spacings, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(top_spacings.size() + 1);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t s = 2; s <= n; ++s) {
    out[s - 2] = rbm_gamma(top_spacings, static_cast<std::size_t>(s));
  }
}

void correlated_normals(std::span<const double> lower, std::size_t dim,
                        std::span<const double> mean, std::span<const double> scale,
                        std::uint64_t seed, std::size_t n_paths, std::span<double> out) {
  const auto paths = static_cast<std::int64_t>(n_paths);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < paths; ++p) {
    const auto idx = static_cast<std::size_t>(p);
    correlated_normal_path(lower, dim, mean, scale, seed, idx, out.subspan(idx * dim, dim));
  }
}

}  // namespace rbmtail::kernels::omp
