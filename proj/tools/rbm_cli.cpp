// rbm: command-line front end for the rbmtail library.
//
//   rbm estimate FILE [--estimator rbm|hill|smoohill] [--threshold auto|k:<real>|s:<int>] [--cap [M]]
//   rbm path FILE [--estimators rbm,hill,smoohill] [--cap [M]]
//   rbm bench SPEC [--n N] [--reps R] [--seed S] [--estimators rbm,gh] [--format csv|json] [--out F]
//   rbm process --rho R [--rho R ...] [--paths P] [--seed S] [--points M] [--out F]
//
// Exit codes: 0 ok, 2 input error, 3 insufficient data, 4 bad distribution or
// study spec.

#include <omp.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "rbmtail/core.hpp"
#include "rbmtail/distributions.hpp"
#include "rbmtail/format.hpp"
#include "rbmtail/harness.hpp"
#include "rbmtail/hill.hpp"
#include "rbmtail/process.hpp"
#include "rbmtail/rbm.hpp"

namespace {

using namespace rbmtail;

constexpr int kExitInput = 2;
constexpr int kExitInsufficient = 3;
constexpr int kExitSpec = 4;

/// Raised for malformed distribution strings or study options.
struct SpecError : Error {
  using Error::Error;
};

/// Raised for malformed flags or files.
struct InputError : Error {
  using Error::Error;
};

struct Threshold {
  enum class Kind { automatic, k, s } kind = Kind::automatic;
  double k = 0.0;
  std::size_t s = 0;
};

Threshold parse_threshold(const std::string& text) {
  Threshold t;
  if (text == "auto") return t;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InputError("threshold must be auto, k:<real> or s:<int>");
  const std::string tag = text.substr(0, colon);
  const char* first = text.data() + colon + 1;
  const char* last = text.data() + text.size();
  if (tag == "k") {
    auto [ptr, ec] = std::from_chars(first, last, t.k);
    if (ec != std::errc{} || ptr != last || !(t.k > 0.0) || !std::isfinite(t.k)) {
      throw InputError("bad threshold '" + text + "'");
    }
    t.kind = Threshold::Kind::k;
    return t;
  }
  if (tag == "s") {
    auto [ptr, ec] = std::from_chars(first, last, t.s);
    if (ec != std::errc{} || ptr != last) throw InputError("bad threshold '" + text + "'");
    t.kind = Threshold::Kind::s;
    return t;
  }
  throw InputError("threshold must be auto, k:<real> or s:<int>");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(',', start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

Sample load_sample(const std::string& file, std::optional<std::size_t> cap) {
  const auto raw = read_numbers(file);
  if (raw.empty()) throw EmptyAfterFiltering("input file has no observations");
  return make_sample(raw, cap);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + out_path + "'");
  out << text;
}

// ---------------------------------------------------------------------------

struct EstimateArgs {
  std::string file;
  std::string estimator = "rbm";
  std::string threshold = "auto";
  std::optional<std::size_t> cap;
  double min_k = ThresholdRule{}.min_k;
};

std::string cmd_estimate(const EstimateArgs& a) {
  const Sample sample = load_sample(a.file, a.cap);
  const std::size_t n = sample.size();
  const Threshold th = parse_threshold(a.threshold);

  TailEstimate est;
  if (a.estimator == "rbm") {
    switch (th.kind) {
      case Threshold::Kind::automatic:
        est = rbm_estimate(sample, ThresholdRule{a.min_k});
        break;
      case Threshold::Kind::s:
        est = TailEstimate::at(rbm_at(sample, th.s), k_of_s(th.s, n), th.s);
        break;
      case Threshold::Kind::k: {
        const std::size_t s = s_of_k(th.k, n);
        est = TailEstimate::at(rbm_at(sample, s), k_of_s(s, n), s);
        break;
      }
    }
  } else if (a.estimator == "hill" || a.estimator == "gh" || a.estimator == "smoohill") {
    std::size_t k = 0;
    switch (th.kind) {
      case Threshold::Kind::automatic:
        if (a.estimator == "smoohill") {
          throw InputError("smoohill has no automatic threshold; pass --threshold k:<real>");
        }
        est = gh_threshold(sample);
        break;
      case Threshold::Kind::s:
        k = hill_order(k_of_s(th.s, n), n);
        break;
      case Threshold::Kind::k:
        k = hill_order(th.k, n);
        break;
    }
    if (k != 0) {
      const double g = a.estimator == "smoohill" ? smoohill(sample, k) : hill(sample, k);
      est = TailEstimate::at(g, static_cast<double>(k));
    }
  } else {
    throw SpecError("unknown estimator '" + a.estimator + "'");
  }

  nlohmann::ordered_json j;
  j["estimator"] = a.estimator;
  j["n_used"] = n;
  j["n_dropped"] = sample.n_dropped_nonpositive();
  j["n_capped"] = sample.n_capped();
  j["gamma_hat"] = est.gamma_hat;
  j["k_hat"] = est.k_hat;
  j["s_hat"] = est.s_hat ? nlohmann::ordered_json(*est.s_hat) : nlohmann::ordered_json(nullptr);
  j["stderr"] = est.std_error;
  j["warning"] = est.warning;
  return j.dump(2) + '\n';
}

// ---------------------------------------------------------------------------

struct PathArgs {
  std::string file;
  std::string estimators = "rbm,hill,smoohill";
  std::optional<std::size_t> cap;
};

std::string cmd_path(const PathArgs& a) {
  bool with_hill = false;
  bool with_smoo = false;
  for (const auto& e : split_list(a.estimators)) {
    if (e == "rbm") continue;
    if (e == "hill") {
      with_hill = true;
    } else if (e == "smoohill") {
      with_smoo = true;
    } else {
      throw SpecError("unknown estimator '" + e + "'");
    }
  }
  const Sample sample = load_sample(a.file, a.cap);
  const std::size_t n = sample.size();
  const auto path = rbm_path(sample);
  const auto hills = hill_all(sample);

  std::string out = "k,s,gamma_rbm";
  if (with_hill) out += ",gamma_hill";
  if (with_smoo) out += ",gamma_smoohill";
  out += '\n';
  for (const auto& p : path.points) {
    out += format_double(p.k) + ',' + std::to_string(p.s) + ',' + format_double(p.gamma_hat);
    const std::size_t k = hill_order(p.k, n);
    if (with_hill) out += ',' + format_double(hills[k - 1]);
    if (with_smoo) {
      out += ',';
      const std::size_t hi = std::min(2 * k, n - 1);
      if (hi > k) {
        double acc = 0.0;
        for (std::size_t j = k + 1; j <= hi; ++j) acc += hills[j - 1];
        out += format_double(acc / static_cast<double>(hi - k));
      }
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string spec;
  std::size_t n = 200;
  std::size_t reps = 1000;
  std::uint64_t seed = 0;
  std::string estimators = "rbm,gh";
  std::optional<std::size_t> cap;
  double min_k = ThresholdRule{}.min_k;
  int threads = 0;
  std::string format = "csv";
};

std::string cmd_bench(const BenchArgs& a) {
  BenchConfig cfg;
  try {
    cfg.distribution = parse_distribution(a.spec);
    cfg.estimators.clear();
    for (const auto& e : split_list(a.estimators)) cfg.estimators.push_back(parse_bench_estimator(e));
  } catch (const Error& e) {
    throw SpecError(e.what());
  }
  cfg.n = a.n;
  cfg.replications = a.reps;
  cfg.seed = a.seed;
  cfg.cap = a.cap;
  cfg.rbm_rule.min_k = a.min_k;
  cfg.threads = a.threads;
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw SpecError(e.what());
  }
  const auto rows = run_benchmark(cfg);
  return a.format == "json" ? bench_json(cfg, rows) : bench_csv(cfg, rows);
}

// ---------------------------------------------------------------------------

struct ProcessArgs {
  std::vector<std::string> rhos;
  std::size_t paths = 1000;
  std::uint64_t seed = 0;
  std::size_t points = 200;
  double below = 6.0;
  double above = 4.0;
};

std::string cmd_process(const ProcessArgs& a) {
  std::vector<double> rhos;
  for (const auto& item : a.rhos) {
    for (const auto& tok : split_list(item)) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || !(v < 0.0) || !std::isfinite(v)) {
        throw SpecError("rho must be a negative number, got '" + tok + "'");
      }
      rhos.push_back(v);
    }
  }
  if (rhos.empty()) throw SpecError("process: at least one --rho is required");
  if (a.paths < 1 || a.points < 2 || !(a.below > 0.0) || !(a.above > 0.0)) {
    throw SpecError("process: need --paths >= 1, --points >= 2, positive --below/--above");
  }
  process::RegretOptions opts;
  opts.n_paths = a.paths;
  opts.seed = a.seed;
  opts.grid_points = a.points;
  opts.below = a.below;
  opts.above = a.above;
  return process::regret_csv(process::regret_study(rhos, opts));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random block maxima tail-index estimation"};
  app.require_subcommand(1);
  std::string out_path;
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate the tail index of a data file (JSON)");
  estimate->add_option("file", est.file, "One number per line")->required();
  estimate->add_option("--estimator", est.estimator,
                       "rbm | hill | smoohill | gh (hill at the Guillou-Hall threshold)")
      ->check(CLI::IsMember({"rbm", "hill", "smoohill", "gh"}));
  estimate->add_option("--threshold", est.threshold, "auto | k:<real> | s:<int>");
  estimate->add_option("--cap", est.cap, "Keep only the largest M observations")
      ->expected(0, 1)
      ->default_str(std::to_string(kDefaultCap));
  estimate->add_option("--min-k", est.min_k, "Smallest k eligible for automatic RBM selection");
  estimate->add_option("--out", out_path, "Write output to a file");

  PathArgs pth;
  auto* path = app.add_subcommand("path", "Estimates along the k grid (CSV)");
  path->add_option("file", pth.file, "One number per line")->required();
  path->add_option("--estimators", pth.estimators, "Comma list of rbm,hill,smoohill");
  path->add_option("--cap", pth.cap, "Keep only the largest M observations")
      ->expected(0, 1)
      ->default_str(std::to_string(kDefaultCap));
  path->add_option("--out", out_path, "Write output to a file");

  BenchArgs bch;
  auto* bench = app.add_subcommand("bench", "Monte Carlo RMSE/bias benchmark");
  bench->add_option("spec", bch.spec, "frechet:2 | burr:1:0.5:2 | t:4 | loggamma | uinvsqlog | pareto:0.5")
      ->required();
  bench->add_option("--n", bch.n, "Draws per replication (before filtering)");
  bench->add_option("--reps", bch.reps, "Replications");
  bench->add_option("--seed", bch.seed, "Master seed");
  bench->add_option("--estimators", bch.estimators, "Comma list of rbm,gh");
  bench->add_option("--cap", bch.cap, "Keep only the largest M observations")
      ->expected(0, 1)
      ->default_str(std::to_string(kDefaultCap));
  bench->add_option("--min-k", bch.min_k, "Smallest k eligible for automatic RBM selection");
  bench->add_option("--format", bch.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("--out", out_path, "Write output to a file");

  ProcessArgs prc;
  auto* proc = app.add_subcommand("process", "Threshold-rule study on the RBM limit process (CSV)");
  proc->add_option("--rho", prc.rhos, "Second-order parameter(s), negative; repeatable or comma list")
      ->required();
  proc->add_option("--paths", prc.paths, "Simulated paths per rho");
  proc->add_option("--seed", prc.seed, "Master seed");
  proc->add_option("--points", prc.points, "Grid points");
  proc->add_option("--below", prc.below, "Grid extent below tau*");
  proc->add_option("--above", prc.above, "Grid extent above tau*");
  proc->add_option("--out", out_path, "Write output to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (threads > 0) omp_set_num_threads(threads);
  bch.threads = threads;

  // A bare --cap means the default cap.
  auto bare_cap = [](CLI::App* cmd, std::optional<std::size_t>& cap) {
    const auto* opt = cmd->get_option("--cap");
    if (opt->count() > 0 && opt->results().size() == 1 && opt->results()[0].empty()) cap = kDefaultCap;
  };
  bare_cap(estimate, est.cap);
  bare_cap(path, pth.cap);
  bare_cap(bench, bch.cap);

  try {
    std::string text;
    if (*estimate) {
      text = cmd_estimate(est);
    } else if (*path) {
      text = cmd_path(pth);
    } else if (*bench) {
      text = cmd_bench(bch);
    } else {
      text = cmd_process(prc);
    }
    emit(text, out_path);
    return 0;
  } catch (const SpecError& e) {
    std::cerr << "rbm: " << e.what() << '\n';
    return kExitSpec;
  } catch (const UnknownDistribution& e) {
    std::cerr << "rbm: " << e.what() << '\n';
    return kExitSpec;
  } catch (const PathTooShort& e) {
    std::cerr << "rbm: insufficient data: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const EmptyAfterFiltering& e) {
    std::cerr << "rbm: insufficient data: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const Error& e) {
    std::cerr << "rbm: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "rbm: " << e.what() << '\n';
    return kExitInput;
  }
}
