#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rbmtail {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

/// Fewer than two strictly positive observations survived filtering.
class EmptyAfterFiltering : public Error {
public:
  using Error::Error;
};

class TooLargeToEnumerate : public Error {
public:
  using Error::Error;
};

class PathTooShort : public Error {
public:
  using Error::Error;
};

class UnknownDistribution : public Error {
public:
  using Error::Error;
};

class Unsupported : public Error {
public:
  using Error::Error;
};

class FactorizationFailure : public Error {
public:
  using Error::Error;
};

/// Malformed numeric input; `line()` is 1-based.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Default number of upper order statistics kept when capping is requested
/// without an explicit value.
inline constexpr std::size_t kDefaultCap = 2000;

/**
 * Validated observations, sorted ascending, all strictly positive.
 *
 * values()[i] is the (i+1)-th smallest observation, so the sample maximum is
 * values().back(). Construction goes through make_sample().
 */
class Sample {
public:
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t n_raw() const noexcept { return n_raw_; }
  std::size_t n_dropped_nonpositive() const noexcept { return n_dropped_; }
  std::size_t n_capped() const noexcept { return n_capped_; }

  /// Log spacings counted from the top: result[i-1] = log(X_{n-i+1,n} / X_{n-i,n})
  /// for i = 1..n-1. Computed from ratios so rescaling the data by a power of
  /// two leaves them bit-identical.
  std::vector<double> top_log_spacings() const;

private:
  friend Sample make_sample(std::span<const double>, std::optional<std::size_t>);
  std::vector<double> values_;
  std::size_t n_raw_ = 0;
  std::size_t n_dropped_ = 0;
  std::size_t n_capped_ = 0;
};

/// Drops non-positive values, optionally keeps only the `cap` largest, and
/// sorts. Throws EmptyAfterFiltering if fewer than two values remain and
/// DomainError on non-finite input.
Sample make_sample(std::span<const double> raw, std::optional<std::size_t> cap = std::nullopt);

/// Threshold k matched to subsample size s: k = 2n/s, for 2 <= s <= n.
double k_of_s(std::size_t s, std::size_t n);

/// Inverse of k_of_s, rounded to the nearest admissible subsample size.
std::size_t s_of_k(double k, std::size_t n);

struct ThresholdPoint {
  std::size_t s = 0;  // subsample size (0 for estimators not indexed by s)
  double k = 0.0;
  double gamma_hat = 0.0;
};

enum class EstimatorId { rbm, hill, smoohill };

std::string to_string(EstimatorId id);

/// One estimator evaluated along a threshold grid, ascending in k.
struct EstimatorPath {
  EstimatorId estimator = EstimatorId::rbm;
  std::vector<ThresholdPoint> points;
};

struct TailEstimate {
  double gamma_hat = 0.0;
  double k_hat = 0.0;
  std::optional<std::size_t> s_hat;  // RBM only
  double std_error = 0.0;            // gamma_hat / sqrt(k_hat)
  bool warning = false;              // threshold rule fell back to a default

  static TailEstimate at(double gamma_hat, double k_hat,
                         std::optional<std::size_t> s_hat = std::nullopt);
};

/// Tail index, second-order parameter and scaled bias level of a
/// second-order regularly varying tail.
struct SecondOrderModel {
  double gamma = 0.0;
  double rho = 0.0;
  double lambda = 0.0;

  /// Throws DomainError unless gamma > 0 and rho <= 0.
  void validate() const;
};

}  // namespace rbmtail
