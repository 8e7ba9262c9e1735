#include "rbmtail/process.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include "rbmtail/format.hpp"
#include "rbmtail/kernels.hpp"
#include "rbmtail/random.hpp"

namespace rbmtail::process {

namespace {

double bias_level(const SecondOrderModel& m) {
  return m.lambda * std::tgamma(1.0 - m.rho);
}

}  // namespace

double mean_r(double tau, const SecondOrderModel& model) {
  if (model.lambda == 0.0) return 0.0;
  return bias_level(model) * std::exp(-model.rho * (tau - std::log(2.0)));
}

double cov_r(double tau1, double tau2, const SecondOrderModel& model) {
  const double hi = std::max(tau1, tau2);
  const double d = std::abs(tau1 - tau2);
  const double g2 = model.gamma * model.gamma;
  return 2.0 * g2 * std::exp(-hi) / (1.0 + std::exp(-d));
}

double mean_rp(double tau, const SecondOrderModel& model) {
  return -model.rho * mean_r(tau, model);
}

double cov_rp(double tau1, double tau2, const SecondOrderModel& model) {
  const double hi = std::max(tau1, tau2);
  const double d = std::abs(tau1 - tau2);
  const double g2 = model.gamma * model.gamma;
  const double den = 1.0 + std::exp(-d);
  return 4.0 * g2 * std::exp(-hi - d) / (den * den * den);
}

double cross_cov(double tau_r, double tau_rp, const SecondOrderModel& model) {
  // d/d(tau_rp) of 2 gamma^2 / (e^tau_r + e^tau_rp).
  const double hi = std::max(tau_r, tau_rp);
  const double g2 = model.gamma * model.gamma;
  const double den = std::exp(tau_r - hi) + std::exp(tau_rp - hi);
  return -2.0 * g2 * std::exp(tau_rp - 2.0 * hi) / (den * den);
}

void ProcessSpec::validate() const {
  model.validate();
  if (grid.size() < 2) throw DomainError("ProcessSpec: grid needs at least 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("ProcessSpec: grid must be strictly increasing");
  }
  for (double t : grid) {
    if (!std::isfinite(t)) throw DomainError("ProcessSpec: grid must be finite");
  }
}

JointLaw joint_law(const ProcessSpec& spec) {
  spec.validate();
  const auto& g = spec.grid;
  const auto& m = spec.model;
  const std::size_t k = g.size();
  JointLaw law;
  law.dim = 2 * k;
  law.mean.resize(law.dim);
  law.cov.resize(law.dim * law.dim);
  for (std::size_t i = 0; i < k; ++i) {
    law.mean[i] = mean_r(g[i], m);
    law.mean[k + i] = mean_rp(g[i], m);
  }
  auto at = [&](std::size_t r, std::size_t c) -> double& { return law.cov[r * law.dim + c]; };
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      at(i, j) = cov_r(g[i], g[j], m);
      at(k + i, k + j) = cov_rp(g[i], g[j], m);
      at(i, k + j) = cross_cov(g[i], g[j], m);
      at(k + j, i) = at(i, k + j);
    }
  }
  return law;
}

Factor factorize(const JointLaw& law) {
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto n = static_cast<Eigen::Index>(law.dim);
  Eigen::Map<const Mat> cov(law.cov.data(), n, n);

  // Marginal variances span many orders of magnitude across the grid, so the
  // factorisation runs on the correlation matrix (unit diagonal).
  Factor f;
  f.dim = law.dim;
  f.scale.resize(law.dim);
  Eigen::VectorXd inv(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = cov(i, i);
    if (!(v > 0.0)) throw FactorizationFailure("factorize: non-positive variance");
    f.scale[static_cast<std::size_t>(i)] = std::sqrt(v);
    inv(i) = 1.0 / std::sqrt(v);
  }
  Mat corr = inv.asDiagonal() * cov * inv.asDiagonal();
  corr = 0.5 * (corr + corr.transpose()).eval();

  const double max_diag = corr.diagonal().maxCoeff();
  double jitter = 0.0;
  for (;;) {
    Mat trial = corr;
    trial.diagonal().array() += jitter;
    Eigen::LLT<Mat> llt(trial);
    if (llt.info() == Eigen::Success) {
      Mat lower = llt.matrixL();
      f.lower.assign(lower.data(), lower.data() + lower.size());
      f.jitter = jitter;
      return f;
    }
    jitter = jitter == 0.0 ? 1e-12 * max_diag : jitter * 10.0;
    if (jitter > 1e-6 * max_diag * (1.0 + 1e-9)) {
      throw FactorizationFailure("factorize: covariance not positive definite within jitter cap");
    }
  }
}

namespace {

template <class DrawFn>
std::vector<ProcessPath> simulate_with(const ProcessSpec& spec, std::size_t n_paths,
                                       std::uint64_t seed, DrawFn draw) {
  if (n_paths < 1) throw DomainError("simulate_paths: n_paths must be >= 1");
  const auto law = joint_law(spec);
  const auto f = factorize(law);
  const std::size_t dim = law.dim;
  const std::size_t k = dim / 2;
  std::vector<double> raw(n_paths * dim);
  draw(f.lower, dim, law.mean, f.scale, seed, n_paths, raw);

  std::vector<ProcessPath> out(n_paths);
  for (std::size_t p = 0; p < n_paths; ++p) {
    const double* row = raw.data() + p * dim;
    out[p].r.assign(row, row + k);
    out[p].r_prime.assign(row + k, row + dim);
  }
  return out;
}

}  // namespace

std::vector<ProcessPath> simulate_paths(const ProcessSpec& spec, std::size_t n_paths,
                                        std::uint64_t seed) {
  return simulate_with(spec, n_paths, seed, kernels::omp::correlated_normals);
}

std::vector<ProcessPath> simulate_paths_serial(const ProcessSpec& spec, std::size_t n_paths,
                                               std::uint64_t seed) {
  return simulate_with(spec, n_paths, seed, kernels::serial::correlated_normals);
}

std::size_t process_threshold_index(const ProcessPath& path, const ProcessSpec& spec) {
  const auto& g = spec.grid;
  if (path.r_prime.size() != g.size()) {
    throw DomainError("process_threshold: path and grid lengths differ");
  }
  const double g2 = spec.model.gamma * spec.model.gamma;
  std::size_t best = 0;
  double best_z = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double rp = path.r_prime[i];
    const double z = rp * rp + g2 / (2.0 * std::exp(g[i]));
    if (z < best_z) {
      best_z = z;
      best = i;
    }
  }
  return best;
}

double process_threshold(const ProcessPath& path, const ProcessSpec& spec) {
  return spec.grid[process_threshold_index(path, spec)];
}

double optimal_tau(const SecondOrderModel& model) {
  model.validate();
  if (!(model.rho < 0.0)) throw DomainError("optimal_tau: need rho < 0");
  if (model.lambda == 0.0) throw DomainError("optimal_tau: lambda = 0 has no finite optimum");
  // Stationarity of b(tau)^2 + gamma^2 e^{-tau}, b = lambda Gamma(1-rho) 2^rho e^{-rho tau}:
  //   -2 rho c^2 e^{-2 rho tau} = gamma^2 e^{-tau},  c = lambda Gamma(1-rho) 2^rho.
  const double rho = model.rho;
  const double c = bias_level(model) * std::exp2(rho);
  const double g2 = model.gamma * model.gamma;
  return std::log(g2 / (-2.0 * rho * c * c)) / (1.0 - 2.0 * rho);
}

double expected_sq_error(double tau, const SecondOrderModel& model) {
  const double b = mean_r(tau, model);
  return b * b + model.gamma * model.gamma * std::exp(-tau);
}

namespace {

// Linear interpolation between order statistics (R type 7).
double quantile_sorted(const std::vector<double>& xs, double p) {
  const double h = (static_cast<double>(xs.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

}  // namespace

std::vector<RegretRow> regret_study(const std::vector<double>& rhos, const RegretOptions& opts) {
  if (opts.grid_points < 2) throw DomainError("regret_study: need at least 2 grid points");
  std::vector<RegretRow> rows;
  for (double rho : rhos) {
    if (!(rho < 0.0)) throw DomainError("regret_study: every rho must be < 0");
    ProcessSpec spec;
    spec.model = {-rho / 2.0, rho, 1.0};
    const double tau_star = optimal_tau(spec.model);
    const double lo = tau_star - opts.below;
    const double hi = tau_star + opts.above;
    spec.grid.resize(opts.grid_points);
    for (std::size_t i = 0; i < opts.grid_points; ++i) {
      spec.grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(opts.grid_points - 1);
    }
    const auto rho_seed =
        random::stream_key(opts.seed, std::bit_cast<std::uint64_t>(rho), random::hash_string("regret"));
    const auto paths = simulate_paths(spec, opts.n_paths, rho_seed);

    const double oracle = expected_sq_error(tau_star, spec.model);
    std::vector<double> shift(paths.size());
    std::vector<double> regret(paths.size());
    std::size_t interior = 0;
    for (std::size_t p = 0; p < paths.size(); ++p) {
      const std::size_t idx = process_threshold_index(paths[p], spec);
      if (idx + 1 < spec.grid.size()) ++interior;
      shift[p] = spec.grid[idx] - tau_star;
      regret[p] = paths[p].r[idx] * paths[p].r[idx] / oracle;
    }

    RegretRow row;
    row.rho = rho;
    row.gamma = spec.model.gamma;
    row.tau_star = tau_star;
    row.n_paths = opts.n_paths;
    row.seed = opts.seed;
    const double n = static_cast<double>(regret.size());
    row.mean_relative_regret = std::accumulate(regret.begin(), regret.end(), 0.0) / n;
    double ss = 0.0;
    for (double r : regret) ss += (r - row.mean_relative_regret) * (r - row.mean_relative_regret);
    row.regret_se = regret.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    row.interior_fraction = static_cast<double>(interior) / n;
    std::sort(shift.begin(), shift.end());
    row.q05 = quantile_sorted(shift, 0.05);
    row.q50 = quantile_sorted(shift, 0.50);
    row.q95 = quantile_sorted(shift, 0.95);
    rows.push_back(row);
  }
  return rows;
}

std::string regret_csv(const std::vector<RegretRow>& rows) {
  std::string out = "rho,gamma,tau_star,q05,q50,q95,mean_relative_regret,n_paths,seed\n";
  for (const auto& r : rows) {
    out += format_double(r.rho) + ',' + format_double(r.gamma) + ',' +
           format_double(r.tau_star) + ',' + format_double(r.q05) + ',' +
           format_double(r.q50) + ',' + format_double(r.q95) + ',' +
           format_double(r.mean_relative_regret) + ',' + std::to_string(r.n_paths) + ',' +
           std::to_string(r.seed) + '\n';
  }
  return out;
}

}  // namespace rbmtail::process
