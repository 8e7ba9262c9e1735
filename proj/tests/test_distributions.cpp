#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rbmtail/distributions.hpp"
#include "test_util.hpp"

using namespace rbmtail;

namespace {

double ks_distance(std::vector<double> x, const Distribution& d) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double dmax = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(d, x[i]);
    dmax = std::max({dmax, std::abs(f - static_cast<double>(i) / n),
                     std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return dmax;
}

std::vector<Distribution> with_cdf() {
  return {Distribution::frechet(2.0), Distribution::frechet(0.7), Distribution::burr(),
          Distribution::student_t(3.0), Distribution::student_t(6.0), Distribution::pareto(0.5)};
}

}  // namespace

TEST_SUITE("distributions") {

TEST_CASE("truth values") {
  CHECK(truth(Distribution::frechet(2.0)).gamma == 0.5);
  CHECK(truth(Distribution::frechet(2.0)).rho == -1.0);
  CHECK(truth(Distribution::student_t(6.0)).gamma == doctest::Approx(1.0 / 6.0));
  CHECK(truth(Distribution::student_t(6.0)).rho == doctest::Approx(-1.0 / 3.0));
  CHECK(truth(Distribution::burr()).gamma == 1.0);
  CHECK(truth(Distribution::burr()).rho == -0.5);
  CHECK(truth(Distribution::log_gamma()).gamma == 1.0);
  CHECK(truth(Distribution::log_gamma()).rho == 0.0);
  CHECK(truth(Distribution::u_inv_sq_log()).gamma == 2.0);
  CHECK(truth(Distribution::u_inv_sq_log()).rho == 0.0);
  CHECK(truth(Distribution::pareto(0.5)).gamma == 0.5);
  CHECK(truth(Distribution::pareto(0.5)).rho < 0.0);
}

TEST_CASE("spec grammar round-trips and rejects malformed strings") {
  for (const char* s : {"frechet:2", "burr:1:0.5:2", "t:4", "loggamma", "uinvsqlog", "pareto:0.5"}) {
    const auto d = parse_distribution(s);
    CHECK(d.id() == s);
    CHECK(parse_distribution(d.id()).kind == d.kind);
  }
  CHECK(parse_distribution("frechet:2.5").param == 2.5);
  for (const char* s : {"burr:1", "burr:1:0.5:3", "frechet", "frechet:-1", "frechet:0", "frechet:x",
                        "frechet:2:1", "t:", "t:inf", "loggamma:2", "cauchy", "", "pareto:nan"}) {
    CHECK_THROWS_AS(parse_distribution(s), UnknownDistribution);
  }
}

TEST_CASE("quantile hand values") {
  CHECK(quantile(Distribution::frechet(2.0), std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(quantile(Distribution::burr(), 0.75) == doctest::Approx(1.0).epsilon(1e-15));
  const double e = std::numbers::e;
  CHECK(quantile(Distribution::u_inv_sq_log(), 1.0 - std::exp(-1.0)) ==
        doctest::Approx(2.0 * e * e).epsilon(1e-12));
  CHECK(quantile(Distribution::student_t(5.0), 0.5) == doctest::Approx(0.0));
  CHECK(quantile(Distribution::pareto(0.5), 0.75) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(quantile(Distribution::frechet(2.0), 0.0), DomainError);
  CHECK_THROWS_AS(quantile(Distribution::frechet(2.0), 1.0), DomainError);
  CHECK_THROWS_AS(quantile(Distribution::burr(), -0.1), DomainError);
  CHECK_THROWS_AS(quantile(Distribution::log_gamma(), 0.5), Unsupported);
  CHECK_THROWS_AS(cdf(Distribution::u_inv_sq_log(), 3.0), Unsupported);
}

TEST_CASE("quantile is strictly increasing and inverts the CDF") {
  auto all = with_cdf();
  all.push_back(Distribution::u_inv_sq_log());
  for (const auto& d : all) {
    double prev = -1e300;
    for (int i = 1; i < 1000; ++i) {
      const double u = i / 1000.0;
      const double q = quantile(d, u);
      CHECK(q > prev);
      prev = q;
      if (d.kind != DistKind::u_inv_sq_log) CHECK(std::abs(cdf(d, q) - u) < 1e-10);
    }
  }
}

TEST_CASE("sampling is deterministic and rejects n = 0") {
  for (const char* s : {"frechet:2", "burr:1:0.5:2", "t:4", "loggamma", "uinvsqlog", "pareto:0.5"}) {
    const auto d = parse_distribution(s);
    CHECK(sample(d, 100, 42) == sample(d, 100, 42));
    CHECK(sample(d, 100, 42) != sample(d, 100, 43));
    CHECK_THROWS_AS(sample(d, 0, 1), DomainError);
  }
}

TEST_CASE("Frechet sampler: KS distance at n = 1e5") {
  const auto d = Distribution::frechet(2.0);
  CHECK(ks_distance(sample(d, 100000, 2024), d) < 0.006);
}

TEST_CASE("other samplers agree with their CDFs") {
  for (const auto& d : with_cdf()) CHECK(ks_distance(sample(d, 100000, 99), d) < 0.006);
  CHECK(ks_distance(sample(Distribution::log_gamma(), 100000, 5), Distribution::log_gamma()) < 0.006);
}

TEST_CASE("log-gamma sampler: support and E[1/X] = 1/4") {
  const auto x = sample(Distribution::log_gamma(), 100000, 77);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : x) {
    CHECK(v > 1.0);
    sum += 1.0 / v;
    sum_sq += 1.0 / (v * v);
  }
  const double n = static_cast<double>(x.size());
  const double mean = sum / n;
  const double se = std::sqrt((sum_sq / n - mean * mean) / n);
  CHECK(std::abs(mean - 0.25) < 3.0 * se);
}

TEST_CASE("Student-t sampler keeps negative draws") {
  const auto x = sample(Distribution::student_t(6.0), 2000, 3);
  const auto neg = std::count_if(x.begin(), x.end(), [](double v) { return v <= 0.0; });
  CHECK(neg > 900);
  CHECK(neg < 1100);
}

TEST_CASE("U-transform sampler: X >= 1 and the transform of U") {
  const auto x = sample(Distribution::u_inv_sq_log(), 10000, 8);
  for (double v : x) CHECK(v >= 1.0);
  // P(X > q(u)) = 1 - u on a few probabilities.
  for (double u : {0.5, 0.9, 0.99}) {
    const double q = quantile(Distribution::u_inv_sq_log(), u);
    const double frac =
        static_cast<double>(std::count_if(x.begin(), x.end(), [&](double v) { return v > q; })) /
        static_cast<double>(x.size());
    CHECK(std::abs(frac - (1.0 - u)) < 4.0 * std::sqrt(u * (1.0 - u) / 10000.0));
  }
}

}
