// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rbmtail/distributions.hpp"
#include "rbmtail/kernels.hpp"
#include "rbmtail/process.hpp"

using namespace rbmtail;

namespace {

std::vector<double> sorted_logs(std::size_t n) {
  auto x = sample(Distribution::frechet(2.0), n, 1);
  std::sort(x.begin(), x.end());
  for (auto& v : x) v = std::log(v);
  return x;
}

std::vector<double> top_spacings(std::size_t n) {
  const auto logs = sorted_logs(n);
  std::vector<double> d(n - 1);
  for (std::size_t i = 1; i < n; ++i) d[i - 1] = logs[n - i] - logs[n - i - 1];
  return d;
}

template <void (*Fn)(std::span<const double>, std::span<double>)>
void profile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto logs = sorted_logs(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    Fn(logs, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <void (*Fn)(std::span<const double>, std::span<double>)>
void gammas(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = top_spacings(n);
  std::vector<double> out(n - 1);
  for (auto _ : state) {
    Fn(d, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

using NormalsFn = void (*)(std::span<const double>, std::size_t, std::span<const double>,
                           std::span<const double>, std::uint64_t, std::size_t, std::span<double>);

template <NormalsFn Fn>
void normals(benchmark::State& state) {
  process::ProcessSpec spec;
  spec.model = {0.5, -1.0, 1.0};
  for (int i = 0; i < 100; ++i) spec.grid.push_back(-4.0 + 8.0 * i / 99.0);
  const auto law = process::joint_law(spec);
  const auto f = process::factorize(law);
  const auto paths = static_cast<std::size_t>(state.range(0));
  std::vector<double> out(paths * law.dim);
  for (auto _ : state) {
    Fn(f.lower, law.dim, law.mean, f.scale, 7, paths, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(profile<kernels::serial::log_max_profile>)->Name("log_max_profile/serial")->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(profile<kernels::omp::log_max_profile>)->Name("log_max_profile/omp")->RangeMultiplier(4)->Range(256, 16384)->Complexity()->UseRealTime();
BENCHMARK(gammas<kernels::serial::rbm_gammas>)->Name("rbm_gammas/serial")->RangeMultiplier(4)->Range(256, 16384)->Complexity();
BENCHMARK(gammas<kernels::omp::rbm_gammas>)->Name("rbm_gammas/omp")->RangeMultiplier(4)->Range(256, 16384)->Complexity()->UseRealTime();
BENCHMARK(normals<kernels::serial::correlated_normals>)->Name("correlated_normals/serial")->Arg(1000)->Arg(10000);
BENCHMARK(normals<kernels::omp::correlated_normals>)->Name("correlated_normals/omp")->Arg(1000)->Arg(10000)->UseRealTime();

BENCHMARK_MAIN();
