#include "rbmtail/harness.hpp"

#include <omp.h>

#include <cmath>
#include <cstdint>
#include <json.hpp>

#include "rbmtail/format.hpp"
#include "rbmtail/hill.hpp"
#include "rbmtail/random.hpp"
#include "rbmtail/rbm.hpp"

namespace rbmtail {

std::string to_string(BenchEstimator e) {
  switch (e) {
    case BenchEstimator::rbm:
      return "rbm";
    case BenchEstimator::gh:
      return "gh";
  }
  return "?";
}

BenchEstimator parse_bench_estimator(std::string_view name) {
  if (name == "rbm") return BenchEstimator::rbm;
  if (name == "gh") return BenchEstimator::gh;
  throw DomainError("unknown benchmark estimator '" + std::string(name) + "'");
}

void BenchConfig::validate() const {
  if (replications < 1) throw DomainError("BenchConfig: replications must be >= 1");
  if (n < 4) throw DomainError("BenchConfig: n must be >= 4");
  if (estimators.empty()) throw DomainError("BenchConfig: no estimators");
  if (cap && *cap < 2) throw DomainError("BenchConfig: cap must be >= 2");
}

ErrorSummary rmse_bias(std::span<const double> errors) {
  if (errors.empty()) throw DomainError("rmse_bias: no errors");
  const double r = static_cast<double>(errors.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double e : errors) {
    sum += e;
    sum_sq += e * e;
  }
  ErrorSummary out;
  out.bias = sum / r;
  const double mse = sum_sq / r;
  out.rmse = std::sqrt(mse);
  if (errors.size() < 2) return out;

  double var_e = 0.0;
  double var_sq = 0.0;
  for (double e : errors) {
    var_e += (e - out.bias) * (e - out.bias);
    var_sq += (e * e - mse) * (e * e - mse);
  }
  var_e /= r - 1.0;
  var_sq /= r - 1.0;
  out.bias_se = std::sqrt(var_e / r);
  out.rmse_se = out.rmse > 0.0 ? std::sqrt(var_sq / r) / (2.0 * out.rmse) : 0.0;
  out.se_defined = true;
  return out;
}

namespace {

struct Outcome {
  bool ok = false;
  bool warning = false;
  double error = 0.0;
  double k_hat = 0.0;
};

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchConfig& config) {
  config.validate();
  const auto id = config.distribution.id();
  const double gamma_true = truth(config.distribution).gamma;
  const std::uint64_t tag = random::hash_string(id);
  const std::size_t n_est = config.estimators.size();
  const auto reps = static_cast<std::int64_t>(config.replications);
  std::vector<Outcome> outcomes(config.replications * n_est);

  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (std::int64_t rep = 0; rep < reps; ++rep) {
    const auto r = static_cast<std::size_t>(rep);
    const auto raw = sample(config.distribution, config.n, random::stream_key(config.seed, r, tag));
    std::optional<Sample> data;
    try {
      data.emplace(make_sample(raw, config.cap));
    } catch (const Error&) {
      continue;
    }
    for (std::size_t e = 0; e < n_est; ++e) {
      Outcome& out = outcomes[r * n_est + e];
      try {
        const TailEstimate est = config.estimators[e] == BenchEstimator::rbm
                                     ? rbm_estimate(*data, config.rbm_rule)
                                     : gh_threshold(*data);
        out = {true, est.warning, est.gamma_hat - gamma_true, est.k_hat};
      } catch (const Error&) {
        out.ok = false;
      }
    }
  }

  std::vector<BenchRow> rows;
  for (std::size_t e = 0; e < n_est; ++e) {
    BenchRow row;
    row.distribution = id;
    row.estimator = to_string(config.estimators[e]);
    row.n = config.n;
    std::vector<double> errors;
    double k_sum = 0.0;
    for (std::size_t r = 0; r < config.replications; ++r) {
      const Outcome& o = outcomes[r * n_est + e];
      if (!o.ok) {
        ++row.excluded;
        continue;
      }
      errors.push_back(o.error);
      k_sum += o.k_hat;
      if (o.warning) ++row.warnings;
    }
    row.replications = errors.size();
    if (!errors.empty()) {
      row.summary = rmse_bias(errors);
      row.mean_k_hat = k_sum / static_cast<double>(errors.size());
    }
    rows.push_back(row);
  }
  return rows;
}

std::string bench_csv(const BenchConfig& config, const std::vector<BenchRow>& rows) {
  std::string out =
      "distribution,estimator,n,replications,excluded,warnings,rmse,rmse_se,bias,bias_se,"
      "se_defined,mean_k_hat,seed,version\n";
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out += r.distribution + ',' + r.estimator + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.replications) + ',' + std::to_string(r.excluded) + ',' +
           std::to_string(r.warnings) + ',' + format_double(s.rmse) + ',' +
           format_double(s.rmse_se) + ',' + format_double(s.bias) + ',' +
           format_double(s.bias_se) + ',' + (s.se_defined ? "1" : "0") + ',' +
           format_double(r.mean_k_hat) + ',' + std::to_string(config.seed) + ',' +
           std::string(kVersion) + '\n';
  }
  return out;
}

std::string bench_json(const BenchConfig& config, const std::vector<BenchRow>& rows) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["seed"] = config.seed;
  j["distribution"] = config.distribution.id();
  j["n"] = config.n;
  j["n_is_prefilter"] = true;
  j["replications"] = config.replications;
  j["cap"] = config.cap ? nlohmann::ordered_json(*config.cap) : nlohmann::ordered_json(nullptr);
  j["rbm_min_k"] = config.rbm_rule.min_k;
  auto& arr = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"distribution", r.distribution},
                   {"estimator", r.estimator},
                   {"n", r.n},
                   {"replications", r.replications},
                   {"excluded", r.excluded},
                   {"warnings", r.warnings},
                   {"rmse", r.summary.rmse},
                   {"rmse_se", r.summary.rmse_se},
                   {"bias", r.summary.bias},
                   {"bias_se", r.summary.bias_se},
                   {"se_defined", r.summary.se_defined},
                   {"mean_k_hat", r.mean_k_hat}});
  }
  return j.dump(2) + '\n';
}

}  // namespace rbmtail
