#include "rbmtail/distributions.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <charconv>
#include <cmath>
#include <limits>

#include "rbmtail/random.hpp"

namespace rbmtail {

namespace {

std::string format_param(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_positive(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v) || !(v > 0.0)) {
    throw UnknownDistribution("bad parameter '" + std::string(text) + "' in '" +
                              std::string(spec) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

void check_unit(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("quantile: u must lie in (0, 1)");
}

}  // namespace

Distribution Distribution::frechet(double alpha) {
  if (!(alpha > 0.0)) throw DomainError("frechet: alpha must be > 0");
  return {DistKind::frechet, alpha};
}
Distribution Distribution::burr() { return {DistKind::burr, 0.0}; }
Distribution Distribution::student_t(double df) {
  if (!(df > 0.0)) throw DomainError("student_t: df must be > 0");
  return {DistKind::student_t, df};
}
Distribution Distribution::log_gamma() { return {DistKind::log_gamma, 0.0}; }
Distribution Distribution::u_inv_sq_log() { return {DistKind::u_inv_sq_log, 0.0}; }
Distribution Distribution::pareto(double gamma) {
  if (!(gamma > 0.0)) throw DomainError("pareto: gamma must be > 0");
  return {DistKind::pareto, gamma};
}

std::string Distribution::id() const {
  switch (kind) {
    case DistKind::frechet:
      return "frechet:" + format_param(param);
    case DistKind::burr:
      return "burr:1:0.5:2";
    case DistKind::student_t:
      return "t:" + format_param(param);
    case DistKind::log_gamma:
      return "loggamma";
    case DistKind::u_inv_sq_log:
      return "uinvsqlog";
    case DistKind::pareto:
      return "pareto:" + format_param(param);
  }
  return "?";
}

Distribution parse_distribution(std::string_view spec) {
  const auto parts = split(spec, ':');
  const auto name = parts.front();
  auto want_args = [&](std::size_t count) {
    if (parts.size() != count + 1) {
      throw UnknownDistribution("'" + std::string(spec) + "': expected " +
                                std::to_string(count) + " parameter(s)");
    }
  };
  if (name == "frechet") {
    want_args(1);
    return Distribution::frechet(parse_positive(parts[1], spec));
  }
  if (name == "burr") {
    want_args(3);
    // Only the single Burr member used in the benchmark is defined.
    const double a = parse_positive(parts[1], spec);
    const double b = parse_positive(parts[2], spec);
    const double c = parse_positive(parts[3], spec);
    if (a != 1.0 || b != 0.5 || c != 2.0) {
      throw UnknownDistribution("'" + std::string(spec) + "': only burr:1:0.5:2 is supported");
    }
    return Distribution::burr();
  }
  if (name == "t") {
    want_args(1);
    return Distribution::student_t(parse_positive(parts[1], spec));
  }
  if (name == "loggamma") {
    want_args(0);
    return Distribution::log_gamma();
  }
  if (name == "uinvsqlog") {
    want_args(0);
    return Distribution::u_inv_sq_log();
  }
  if (name == "pareto") {
    want_args(1);
    return Distribution::pareto(parse_positive(parts[1], spec));
  }
  throw UnknownDistribution("unknown distribution '" + std::string(spec) + "'");
}

TruthValues truth(const Distribution& dist) {
  switch (dist.kind) {
    case DistKind::frechet:
      return {1.0 / dist.param, -1.0};
    case DistKind::burr:
      return {1.0, -0.5};
    case DistKind::student_t:
      return {1.0 / dist.param, -2.0 / dist.param};
    case DistKind::log_gamma:
      return {1.0, 0.0};
    case DistKind::u_inv_sq_log:
      return {2.0, 0.0};
    case DistKind::pareto:
      return {dist.param, -std::numeric_limits<double>::infinity()};
  }
  throw UnknownDistribution("truth: unrecognised distribution");
}

double quantile(const Distribution& dist, double u) {
  check_unit(u);
  switch (dist.kind) {
    case DistKind::frechet:
      return std::pow(-std::log(u), -1.0 / dist.param);
    case DistKind::burr: {
      const double r = std::pow(1.0 - u, -0.5) - 1.0;
      return r * r;
    }
    case DistKind::student_t:
      return boost::math::quantile(boost::math::students_t(dist.param), u);
    case DistKind::log_gamma:
      throw Unsupported("quantile: log-gamma has no closed-form inverse");
    case DistKind::u_inv_sq_log: {
      const double v = 1.0 - u;
      return (1.0 - std::log(v)) / (v * v);
    }
    case DistKind::pareto:
      return std::pow(1.0 - u, -dist.param);
  }
  throw UnknownDistribution("quantile: unrecognised distribution");
}

double cdf(const Distribution& dist, double x) {
  switch (dist.kind) {
    case DistKind::frechet:
      return x > 0.0 ? std::exp(-std::pow(x, -dist.param)) : 0.0;
    case DistKind::burr:
      return x > 0.0 ? 1.0 - std::pow(1.0 + std::sqrt(x), -2.0) : 0.0;
    case DistKind::student_t:
      return boost::math::cdf(boost::math::students_t(dist.param), x);
    case DistKind::log_gamma:
      return x > 1.0 ? 1.0 - (1.0 + std::log(x)) / x : 0.0;
    case DistKind::u_inv_sq_log:
      throw Unsupported("cdf: no closed form for U^{-2}(1 - log U)");
    case DistKind::pareto:
      return x > 1.0 ? 1.0 - std::pow(x, -1.0 / dist.param) : 0.0;
  }
  throw UnknownDistribution("cdf: unrecognised distribution");
}

std::vector<double> sample(const Distribution& dist, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw DomainError("sample: n must be >= 1");
  random::Stream rng(seed);
  std::vector<double> out(n);
  switch (dist.kind) {
    case DistKind::frechet:
      for (auto& x : out) x = std::pow(rng.exponential(), -1.0 / dist.param);
      break;
    case DistKind::burr:
      for (auto& x : out) {
        const double r = std::pow(rng.uniform(), -0.5) - 1.0;
        x = r * r;
      }
      break;
    case DistKind::student_t:
      for (auto& x : out) {
        const double z = rng.normal();
        x = z / std::sqrt(rng.chi_square(dist.param) / dist.param);
      }
      break;
    case DistKind::log_gamma:
      // log X ~ Gamma(2, 1), i.e. the sum of two standard exponentials.
      for (auto& x : out) x = std::exp(rng.exponential() + rng.exponential());
      break;
    case DistKind::u_inv_sq_log:
      for (auto& x : out) {
        const double v = rng.uniform();
        x = (1.0 - std::log(v)) / (v * v);
      }
      break;
    case DistKind::pareto:
      for (auto& x : out) x = std::pow(rng.uniform(), -dist.param);
      break;
  }
  return out;
}

}  // namespace rbmtail
