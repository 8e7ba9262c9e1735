#pragma once

// Hot loops, each in a serial reference form and an OpenMP form. Both forms
// evaluate every output element with the same per-element routine and the
// same summation order, so their results are bit-identical for any thread
// count; the serial form is kept for testing and benchmarking.

#include <cstddef>
#include <cstdint>
#include <span>

namespace rbmtail::kernels {

/// M(s) for one s: sum_{j=1}^{n-s+1} w_j(n,s) * logs[n-j], logs ascending.
double log_max_mean(std::span<const double> sorted_logs, std::size_t s) noexcept;

/// s * (M(s) - M(s-1)) for one s, evaluated on top log spacings as a
/// non-negative combination (no cancellation between M values).
double rbm_gamma(std::span<const double> top_spacings, std::size_t s) noexcept;

/// Draws `n_paths` vectors mean + scale .* (L z), z standard normal from
/// stream (seed, path). `lower` is row-major dim x dim lower triangular;
/// `out` is row-major n_paths x dim.
void correlated_normal_path(std::span<const double> lower, std::size_t dim,
                            std::span<const double> mean, std::span<const double> scale,
                            std::uint64_t seed, std::size_t path, std::span<double> out) noexcept;

namespace serial {

/// out[s-1] = M(s) for s = 1..n.
void log_max_profile(std::span<const double> sorted_logs, std::span<double> out);

/// out[s-2] = s * (M(s) - M(s-1)) for s = 2..n.
void rbm_gammas(std::span<const double> top_spacings, std::span<double> out);

void correlated_normals(std::span<const double> lower, std::size_t dim,
                        std::span<const double> mean, std::span<const double> scale,
                        std::uint64_t seed, std::size_t n_paths, std::span<double> out);

}  // namespace serial

namespace omp {

void log_max_profile(std::span<const double> sorted_logs, std::span<double> out);
void rbm_gammas(std::span<const double> top_spacings, std::span<double> out);
void correlated_normals(std::span<const double> lower, std::size_t dim,
                        std::span<const double> mean, std::span<const double> scale,
                        std::uint64_t seed, std::size_t n_paths, std::span<double> out);

}  // namespace omp

}  // namespace rbmtail::kernels
