#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace rbmtail::random {

/// SplitMix64 finaliser; used to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stable key for stream `index` of `master`, optionally tagged by a domain
/// word (e.g. a distribution hash). Independent of thread layout.
constexpr std::uint64_t stream_key(std::uint64_t master, std::uint64_t index,
                                   std::uint64_t tag = 0) noexcept {
  return mix64(mix64(mix64(master) ^ index) ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

/// FNV-1a, for turning identifiers into stream tags.
constexpr std::uint64_t hash_string(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/**
 * xoshiro256** seeded from a 64-bit key through SplitMix64.
 *
 * Satisfies UniformRandomBitGenerator. Every variate helper below is written
 * out explicitly so draws are identical across standard libraries.
 */
class Stream {
public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t key) noexcept {
    std::uint64_t x = key;
    for (auto& w : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      w = z ^ (z >> 31);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() noexcept { return -std::log(uniform()); }

  /// Standard normal, Marsaglia polar method (spare value discarded).
  double normal() noexcept {
    for (;;) {
      const double u = 2.0 * uniform() - 1.0;
      const double v = 2.0 * uniform() - 1.0;
      const double r2 = u * u + v * v;
      if (r2 > 0.0 && r2 < 1.0) {
        return u * std::sqrt(-2.0 * std::log(r2) / r2);
      }
    }
  }

  /// Gamma(shape, 1), Marsaglia-Tsang; shape < 1 via the U^{1/a} boost.
  double gamma(double shape) noexcept {
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      return g * std::pow(uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x;
      double v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_square(double df) noexcept { return 2.0 * gamma(0.5 * df); }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace rbmtail::random
