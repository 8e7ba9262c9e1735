#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbmtail/distributions.hpp"
#include "rbmtail/rbm.hpp"

namespace rbmtail {

/// Estimator with its automatic threshold rule, as run by the benchmark.
enum class BenchEstimator {
  rbm,  // RBM path + slope/variance threshold rule
  gh,   // Hill at the Guillou-Hall threshold
};

std::string to_string(BenchEstimator e);
BenchEstimator parse_bench_estimator(std::string_view name);

struct BenchConfig {
  Distribution distribution;
  std::size_t n = 200;  // draws per replication, before filtering
  std::size_t replications = 1000;
  std::vector<BenchEstimator> estimators{BenchEstimator::rbm, BenchEstimator::gh};
  std::uint64_t seed = 0;
  std::optional<std::size_t> cap;
  ThresholdRule rbm_rule;
  int threads = 0;  // 0: OpenMP default

  void validate() const;
};

struct ErrorSummary {
  double rmse = 0.0;
  double rmse_se = 0.0;
  double bias = 0.0;
  double bias_se = 0.0;
  bool se_defined = false;  // false for a single replication
};

/// rmse = sqrt(mean e^2), bias = mean e, bias_se = sd(e)/sqrt(R),
/// rmse_se = sd(e^2) / (2 rmse sqrt(R)). Summation runs in input order.
ErrorSummary rmse_bias(std::span<const double> errors);

struct BenchRow {
  std::string distribution;
  std::string estimator;
  std::size_t n = 0;
  std::size_t replications = 0;  // successful
  std::size_t excluded = 0;      // failed; replications + excluded = R
  std::size_t warnings = 0;      // threshold rule fell back to its default
  ErrorSummary summary;
  double mean_k_hat = 0.0;
};

/// Replication r draws from stream (seed, r, distribution id) and the
/// per-replication results are reduced in replication order, so rows are
/// bit-identical for any thread count.
std::vector<BenchRow> run_benchmark(const BenchConfig& config);

std::string bench_csv(const BenchConfig& config, const std::vector<BenchRow>& rows);
std::string bench_json(const BenchConfig& config, const std::vector<BenchRow>& rows);

}  // namespace rbmtail
