#pragma once

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rbmtail/core.hpp"
#include "rbmtail/random.hpp"

namespace testutil {

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

/// n positive values spread over several orders of magnitude.
inline std::vector<double> random_positive(std::size_t n, std::uint64_t seed) {
  rbmtail::random::Stream rng(seed);
  std::vector<double> x(n);
  for (auto& v : x) v = std::exp(4.0 * rng.uniform() - 2.0);
  return x;
}

inline rbmtail::Sample sample_of(std::vector<double> v) { return rbmtail::make_sample(v); }

}  // namespace testutil
