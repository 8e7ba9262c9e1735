#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rbmtail/core.hpp"

namespace rbmtail::process {

/**
 * Limit Gaussian process of the threshold-indexed RBM estimator on the
 * log-threshold scale tau = log t:
 *
 *   E R(tau)              = lambda Gamma(1-rho) (e^tau / 2)^{-rho}
 *   Cov(R(s), R(t))       = 2 gamma^2 / (e^s + e^t)
 *
 * R is smooth; R' is jointly Gaussian with R and its moments follow by
 * differentiating the mean and kernel.
 */
double mean_r(double tau, const SecondOrderModel& model);
double cov_r(double tau1, double tau2, const SecondOrderModel& model);

double mean_rp(double tau, const SecondOrderModel& model);
double cov_rp(double tau1, double tau2, const SecondOrderModel& model);

/// Cov(R(tau_r), R'(tau_rp)).
double cross_cov(double tau_r, double tau_rp, const SecondOrderModel& model);

struct ProcessSpec {
  SecondOrderModel model;
  std::vector<double> grid;  // strictly increasing, at least 2 points

  void validate() const;
};

struct ProcessPath {
  std::vector<double> r;
  std::vector<double> r_prime;
};

/// Joint mean and covariance of (R(grid), R'(grid)), dimension 2m, row-major.
struct JointLaw {
  std::vector<double> mean;
  std::vector<double> cov;
  std::size_t dim = 0;
};

JointLaw joint_law(const ProcessSpec& spec);

/// Lower Cholesky factor of the correlation-scaled joint covariance, with the
/// diagonal jitter that was needed (0 if none).
struct Factor {
  std::vector<double> lower;  // row-major dim x dim
  std::vector<double> scale;  // marginal standard deviations
  std::size_t dim = 0;
  double jitter = 0.0;
};

/// Jitter starts at 1e-12 of the largest diagonal entry and grows x10 up to
/// 1e-6; past that FactorizationFailure is thrown.
Factor factorize(const JointLaw& law);

/// Exact joint draws of (R, R') on spec.grid. Path p uses RNG stream (seed, p),
/// so the result does not depend on the number of threads.
std::vector<ProcessPath> simulate_paths(const ProcessSpec& spec, std::size_t n_paths,
                                        std::uint64_t seed);

/// Same draws, computed without OpenMP.
std::vector<ProcessPath> simulate_paths_serial(const ProcessSpec& spec, std::size_t n_paths,
                                               std::uint64_t seed);

/// Grid index minimising R'(tau)^2 + gamma^2 / (2 e^tau); ties go to smaller tau.
std::size_t process_threshold_index(const ProcessPath& path, const ProcessSpec& spec);
double process_threshold(const ProcessPath& path, const ProcessSpec& spec);

/// argmin_tau E[R(tau)^2] = b(tau)^2 + gamma^2 e^{-tau}. Requires rho < 0 and
/// lambda != 0.
double optimal_tau(const SecondOrderModel& model);

/// E[R(tau)^2].
double expected_sq_error(double tau, const SecondOrderModel& model);

struct RegretOptions {
  std::size_t n_paths = 1000;
  std::uint64_t seed = 0;
  std::size_t grid_points = 200;
  double below = 6.0;  // grid spans [tau* - below, tau* + above]
  double above = 4.0;
};

struct RegretRow {
  double rho = 0.0;
  double gamma = 0.0;
  double tau_star = 0.0;
  double q05 = 0.0;
  double q50 = 0.0;
  double q95 = 0.0;
  double mean_relative_regret = 0.0;
  double regret_se = 0.0;
  double interior_fraction = 0.0;  // share of paths whose argmin is not the right edge
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

/// Threshold-rule study along gamma = -rho/2, lambda = 1. Each rho gets its
/// own stream derived from (seed, rho).
std::vector<RegretRow> regret_study(const std::vector<double>& rhos, const RegretOptions& opts);

/// Header plus one line per row: rho,gamma,tau_star,q05,q50,q95,
/// mean_relative_regret,n_paths,seed.
std::string regret_csv(const std::vector<RegretRow>& rows);

}  // namespace rbmtail::process
