#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rbmtail/distributions.hpp"
#include "rbmtail/rbm.hpp"
#include "test_util.hpp"

using namespace rbmtail;
using testutil::rel_close;

namespace {

const double e = std::numbers::e;

// C(n-j, s-1) / C(n, s) through lgamma.
double weight_oracle(std::size_t n, std::size_t s, std::size_t j) {
  auto lchoose = [](double a, double b) {
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
  };
  return std::exp(lchoose(double(n - j), double(s - 1)) - lchoose(double(n), double(s)));
}

// Mean of log(max) over all subsets of size s, by enumeration.
double enumerate_mean_log_max(const std::vector<double>& x, std::size_t s) {
  const std::size_t n = x.size();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != s) continue;
    double mx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) mx = std::max(mx, x[i]);
    }
    sum += std::log(mx);
    ++count;
  }
  return sum / static_cast<double>(count);
}

// Straight re-evaluation of the slope/variance objective on a path, honouring
// the same smallest-k restriction as select_threshold.
std::size_t naive_argmin(const EstimatorPath& path, double min_k) {
  const auto& p = path.points;
  std::vector<std::size_t> cand;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (p[i].k >= min_k) cand.push_back(i);
  }
  if (cand.empty()) {
    for (std::size_t i = 1; i < p.size(); ++i) cand.push_back(i);
  }
  std::size_t best = cand.front();
  double best_v = 1e300;
  for (std::size_t i : cand) {
    const double dg = p[i].gamma_hat - p[i - 1].gamma_hat;
    const double dl = std::log(p[i].k) - std::log(p[i - 1].k);
    const double v = (dg / dl) * (dg / dl) + p[i].gamma_hat * p[i].gamma_hat / (2.0 * p[i].k);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("rbm") {

TEST_CASE("weights: small cases") {
  const auto w = subsample_max_weights(4, 2);
  REQUIRE(w.w.size() == 3);
  CHECK(w.w[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(w.w[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(w.w[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  const auto full = subsample_max_weights(5, 5);
  REQUIRE(full.w.size() == 1);
  CHECK(full.w[0] == 1.0);
  const auto one = subsample_max_weights(5, 1);
  CHECK(one.w == std::vector<double>(5, 0.2));
  CHECK_THROWS_AS(subsample_max_weights(5, 0), DomainError);
  CHECK_THROWS_AS(subsample_max_weights(5, 6), DomainError);
}

TEST_CASE("weights: log-gamma oracle at n = 30, s = 7") {
  const auto w = subsample_max_weights(30, 7);
  REQUIRE(w.w.size() == 24);
  for (std::size_t j = 1; j <= 24; ++j) CHECK(rel_close(w.w[j - 1], weight_oracle(30, 7, j), 1e-12));
}

TEST_CASE("weights: normalised, in (0, 1], strictly decreasing") {
  random::Stream rng(5);
  for (std::size_t n : {1u, 2u, 10u, 100u, 1000u, 10000u}) {
    for (int rep = 0; rep < 20; ++rep) {
      const std::size_t s = 1 + rng() % n;
      const auto w = subsample_max_weights(n, s);
      const double total = std::accumulate(w.w.begin(), w.w.end(), 0.0);
      CHECK(std::abs(total - 1.0) < 1e-10);
      // Deep-tail weights can underflow; above the normal range they must be
      // positive and strictly decreasing, and once zero they stay zero.
      CHECK(w.w[0] > 0.0);
      for (std::size_t j = 0; j < w.w.size(); ++j) {
        CHECK(w.w[j] <= 1.0);
        CHECK(w.w[j] >= 0.0);
        if (j == 0) continue;
        CHECK(w.w[j] <= w.w[j - 1]);
        if (s > 1 && w.w[j - 1] > 1e-290) CHECK(w.w[j] < w.w[j - 1]);
        if (w.w[j - 1] == 0.0) CHECK(w.w[j] == 0.0);
      }
    }
  }
}

TEST_CASE("M profile: hand cases") {
  const auto p2 = mean_log_max_profile(testutil::sample_of({1.0, e}));
  CHECK(p2.m[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p2.m[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto p3 = mean_log_max_profile(testutil::sample_of({1.0, e, e * e}));
  CHECK(p3.m[2] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(p3.m[1] == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("M profile: enumeration oracle, monotone, ends at the log maximum") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto raw = testutil::random_positive(8, seed);
    const auto smp = make_sample(raw);
    const auto prof = mean_log_max_profile(smp);
    for (std::size_t s = 1; s <= 8; ++s) {
      CHECK(rel_close(prof.m[s - 1], enumerate_mean_log_max(raw, s), 1e-12));
      if (s > 1) CHECK(prof.m[s - 1] >= prof.m[s - 2]);
    }
    CHECK(prof.m[7] == std::log(smp.values().back()));
  }
}

TEST_CASE("rbm_at: hand cases and errors") {
  CHECK(rbm_at(testutil::sample_of({1.0, e}), 2) == doctest::Approx(1.0).epsilon(1e-15));
  for (double c : {1e-300, 0.37, 5.0, 1e300}) CHECK(rbm_at(testutil::sample_of({c, c}), 2) == 0.0);
  const auto s3 = testutil::sample_of({1.0, e, e * e});
  CHECK(rbm_at(s3, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(rbm_at(s3, 3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(rbm_at(s3, 1), DomainError);
  CHECK_THROWS_AS(rbm_at(s3, 4), DomainError);
}

TEST_CASE("brute_force_rbm: hand cases and guard") {
  const auto s3 = testutil::sample_of({1.0, e, e * e});
  CHECK(brute_force_rbm(s3, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(brute_force_rbm(s3, 3) == doctest::Approx(1.0).epsilon(1e-15));
  const auto big = make_sample(testutil::random_positive(21, 1));
  CHECK_THROWS_AS(brute_force_rbm(big, 3), TooLargeToEnumerate);
  CHECK_THROWS_AS(brute_force_rbm(s3, 1), DomainError);
}

TEST_CASE("rbm_at matches brute force for every s, n <= 12") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (std::size_t n = 2; n <= 12; ++n) {
      const auto smp = make_sample(testutil::random_positive(n, seed * 100 + n));
      for (std::size_t s = 2; s <= n; ++s) {
        CHECK(rel_close(rbm_at(smp, s), brute_force_rbm(smp, s), 1e-12));
      }
    }
  }
}

TEST_CASE("rbm_at agrees with the weighted M-profile difference") {
  const auto smp = make_sample(testutil::random_positive(300, 9));
  const auto prof = mean_log_max_profile(smp);
  for (std::size_t s = 2; s <= 300; s += 7) {
    const double via_profile = static_cast<double>(s) * (prof.m[s - 1] - prof.m[s - 2]);
    CHECK(std::abs(rbm_at(smp, s) - via_profile) < 1e-10 * static_cast<double>(s));
  }
}

TEST_CASE("rbm_path: hand case, length, ordering") {
  const auto path = rbm_path(testutil::sample_of({1.0, e, e * e}));
  REQUIRE(path.points.size() == 2);
  CHECK(path.points[0].s == 3);
  CHECK(path.points[0].k == 2.0);
  CHECK(path.points[0].gamma_hat == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(path.points[1].s == 2);
  CHECK(path.points[1].k == 3.0);
  CHECK(path.points[1].gamma_hat == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

  const auto smp = make_sample(testutil::random_positive(157, 4));
  const auto p = rbm_path(smp);
  REQUIRE(p.points.size() == 156);
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const auto& pt = p.points[i];
    CHECK(pt.k == k_of_s(pt.s, 157));
    CHECK(std::isfinite(pt.gamma_hat));
    CHECK(pt.gamma_hat == rbm_at(smp, pt.s));
    if (i > 0) {
      CHECK(pt.k > p.points[i - 1].k);
      CHECK(pt.s < p.points[i - 1].s);
    }
  }
}

TEST_CASE("constant samples give an all-zero path; selection takes the largest k") {
  const auto smp = testutil::sample_of(std::vector<double>(40, 2.5));
  const auto path = rbm_path(smp);
  for (const auto& pt : path.points) CHECK(pt.gamma_hat == 0.0);
  const auto est = select_threshold(path);
  CHECK(est.gamma_hat == 0.0);
  CHECK(est.k_hat == 40.0);
  CHECK(est.s_hat == std::optional<std::size_t>(2));
}

TEST_CASE("non-negativity on random and heavily tied data") {
  random::Stream rng(77);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> raw(60);
    for (auto& v : raw) v = 1.0 + static_cast<double>(rng() % 4) * (rep % 2 ? 1e-9 : 1.0);
    const auto path = rbm_path(make_sample(raw));
    for (const auto& pt : path.points) CHECK(pt.gamma_hat >= 0.0);
  }
}

TEST_CASE("scale equivariance") {
  const auto raw = sample(Distribution::frechet(2.0), 400, 123);
  const auto base = make_sample(raw);
  const auto ref = rbm_path(base);
  const auto ref_est = rbm_estimate(base);
  for (double c : {0.125, 2.0, 1024.0, 0x1p-40}) {
    auto scaled = raw;
    for (auto& v : scaled) v *= c;
    const auto p = rbm_path(make_sample(scaled));
    for (std::size_t i = 0; i < p.points.size(); ++i) CHECK(p.points[i].gamma_hat == ref.points[i].gamma_hat);
    const auto est = rbm_estimate(make_sample(scaled));
    CHECK(est.gamma_hat == ref_est.gamma_hat);
    CHECK(est.k_hat == ref_est.k_hat);
  }
  for (double c : {0.3, 7.0, 1e-5, 31415.9}) {
    auto scaled = raw;
    for (auto& v : scaled) v *= c;
    const auto p = rbm_path(make_sample(scaled));
    for (std::size_t i = 0; i < p.points.size(); ++i) {
      CHECK(rel_close(p.points[i].gamma_hat, ref.points[i].gamma_hat, 1e-12));
    }
    CHECK(rbm_estimate(make_sample(scaled)).k_hat == ref_est.k_hat);
  }
}

TEST_CASE("select_threshold: constant path picks the largest k") {
  EstimatorPath path;
  for (double k : {2.0, 4.0, 8.0, 16.0, 32.0}) path.points.push_back({0, k, 0.7});
  const auto est = select_threshold(path);
  CHECK(est.k_hat == 32.0);
  CHECK(est.gamma_hat == 0.7);
  CHECK(est.std_error == doctest::Approx(0.7 / std::sqrt(32.0)));
  CHECK_FALSE(est.s_hat.has_value());
  CHECK(select_threshold(path, ThresholdRule{0.0}).k_hat == 32.0);
}

TEST_CASE("select_threshold: two-point path and too-short path") {
  EstimatorPath path;
  path.points.push_back({3, 2.0, 1.0});
  path.points.push_back({2, 3.0, 4.0 / 3.0});
  const auto est = select_threshold(path);
  CHECK(est.k_hat == 3.0);
  CHECK(est.s_hat == std::optional<std::size_t>(2));
  path.points.pop_back();
  CHECK_THROWS_AS(select_threshold(path), PathTooShort);
}

TEST_CASE("select_threshold: ties go to the smaller k") {
  EstimatorPath path;
  path.points.push_back({0, 2.0, 1.0});
  path.points.push_back({0, 4.0, 0.0});
  path.points.push_back({0, 8.0, 0.0});   // objective exactly 0
  path.points.push_back({0, 16.0, 0.0});  // objective exactly 0
  CHECK(select_threshold(path).k_hat == 8.0);
}

TEST_CASE("select_threshold: independent re-evaluation on a synthetic RBM grid") {
  const std::size_t n = 200;
  EstimatorPath path;
  for (std::size_t s = n; s >= 2; --s) {
    const double k = k_of_s(s, n);
    path.points.push_back({s, k, 0.5 + 0.1 * (k / static_cast<double>(n))});
  }
  for (double min_k : {0.0, 4.0, 10.0}) {
    const auto est = select_threshold(path, ThresholdRule{min_k});
    const auto idx = naive_argmin(path, min_k);
    CHECK(est.k_hat == path.points[idx].k);
    CHECK(est.s_hat == std::optional<std::size_t>(path.points[idx].s));
  }
}

TEST_CASE("select_threshold: independent re-evaluation on sampled paths") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto smp = make_sample(sample(Distribution::burr(), 300, seed));
    const auto path = rbm_path(smp);
    for (double min_k : {0.0, 4.0}) {
      const auto est = select_threshold(path, ThresholdRule{min_k});
      const auto& pt = path.points[naive_argmin(path, min_k)];
      CHECK(est.k_hat == pt.k);
      CHECK(est.gamma_hat == pt.gamma_hat);
    }
  }
}

TEST_CASE("select_threshold falls back when no point reaches min_k") {
  EstimatorPath path;
  path.points.push_back({3, 2.0, 1.0});
  path.points.push_back({2, 3.0, 1.0});
  CHECK(select_threshold(path, ThresholdRule{100.0}).k_hat == 3.0);
}

}

TEST_SUITE("rbm") {

TEST_CASE("consistency at fixed k on Frechet(2) data") {
  const std::size_t n = 5000;
  const int reps = 2000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const auto smp = make_sample(sample(Distribution::frechet(2.0), n, random::stream_key(41, r)));
    const double g = rbm_at(smp, 100);
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / reps;
  const double var = (sum_sq - reps * mean * mean) / (reps - 1);
  CHECK(std::abs(mean - 0.5) < 3.0 * std::sqrt(var / reps));
  CHECK(std::abs(100.0 * var / 0.25 - 1.0) < 0.2);
}

}

TEST_SUITE("rbm") {

TEST_CASE("automatic estimate on a seeded Frechet(2) sample lands in the sanity band") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto est = rbm_estimate(make_sample(sample(Distribution::frechet(2.0), 500, seed)));
    CHECK(est.gamma_hat >= 0.3);
    CHECK(est.gamma_hat <= 0.7);
    CHECK(est.std_error == doctest::Approx(est.gamma_hat / std::sqrt(est.k_hat)));
    REQUIRE(est.s_hat.has_value());
    CHECK(est.k_hat == k_of_s(*est.s_hat, 500));
  }
}

}
