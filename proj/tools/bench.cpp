// Compares the serial reference trial loop against the OpenMP one across the
// verification sweeps and the Laplacian demo.

#include <benchmark/benchmark.h>

#include "krein/laplacian.hpp"
#include "krein/oracle.hpp"

namespace {

using krein::Index;
using krein::RunPolicy;
using krein::Sampler;
using krein::Tolerance;

void bench_interval(benchmark::State& state, bool parallel) {
  const Index n = state.range(0);
  const Sampler s{42, n, std::max<Index>(1, n / 2)};
  const long trials = state.range(1);
  const Tolerance tol;
  for (auto _ : state) {
    auto report =
        krein::verify_interval_theorem(s, trials, tol, RunPolicy{parallel});
    benchmark::DoNotOptimize(report.failures);
  }
  state.SetItemsProcessed(state.iterations() * trials);
}

void bench_monotone(benchmark::State& state, bool parallel) {
  const Index n = state.range(0);
  const Sampler s{42, n, std::max<Index>(1, n / 2)};
  const long trials = state.range(1);
  const Tolerance tol;
  for (auto _ : state) {
    auto report =
        krein::verify_monotone_antitone(s, trials, tol, RunPolicy{parallel});
    benchmark::DoNotOptimize(report.failures);
  }
  state.SetItemsProcessed(state.iterations() * trials);
}

void bench_demo(benchmark::State& state, bool parallel) {
  const auto prob = krein::minimal_laplacian(state.range(0));
  const long samples = state.range(1);
  const Tolerance tol;
  for (auto _ : state) {
    auto report = krein::demo_report(prob, samples, 42, tol, RunPolicy{parallel});
    benchmark::DoNotOptimize(report.order_failures);
  }
  state.SetItemsProcessed(state.iterations() * samples);
}

}  // namespace

BENCHMARK_CAPTURE(bench_interval, serial, false)
    ->Args({4, 128})->Args({6, 128})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_interval, openmp, true)
    ->Args({4, 128})->Args({6, 128})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_monotone, serial, false)
    ->Args({4, 128})->Args({6, 128})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_monotone, openmp, true)
    ->Args({4, 128})->Args({6, 128})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_demo, serial, false)
    ->Args({10, 64})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_demo, openmp, true)
    ->Args({10, 64})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
