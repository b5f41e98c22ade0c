/** \file bench_kernels.cpp
 *  \brief Serial vs OpenMP comparison of the data-parallel kernels: the
 *         identity sweep and stripe-grid emission.
 */
#include <benchmark/benchmark.h>

#include "adjchar/analytic.hpp"
#include "adjchar/identities.hpp"

namespace {

void bm_identity_sweep_serial(benchmark::State& state) {
  adjchar::SuiteConfig cfg;
  cfg.n_samples = state.range(0);
  cfg.parallel = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(adjchar::run_identity_suite(cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_samples);
}

void bm_identity_sweep_openmp(benchmark::State& state) {
  adjchar::SuiteConfig cfg;
  cfg.n_samples = state.range(0);
  cfg.parallel = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(adjchar::run_identity_suite(cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_samples);
}

const adjchar::StripeField& demo_field() {
  static const adjchar::StripeField field =
      adjchar::make_demo_stripe_field(adjchar::GasModel{1.4}, 2.0, 0.0);
  return field;
}

void bm_stripe_grid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        adjchar::make_stripe_grid(demo_field(), {-1.0, 1.0, -1.0, 1.0}, n, n));
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}

}  // namespace

BENCHMARK(bm_identity_sweep_serial)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_identity_sweep_openmp)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_stripe_grid)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
