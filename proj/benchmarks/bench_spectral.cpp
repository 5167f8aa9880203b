#include "qcf/jacobi.hpp"
#include "qcf/stability.hpp"
#include "qcf/verify.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_SymbolInjectivity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcf::symbol_injectivity(n, qcf::rat(1, 7), 10, 0));
}
BENCHMARK(BM_SymbolInjectivity)->DenseRange(3, 8);

void BM_StabilityIntervalsAllModels(benchmark::State& state) {
  const auto models = qcf::Catalog::standard_models();
  for (auto _ : state)
    for (const auto& m : models) benchmark::DoNotOptimize(qcf::stability_interval(m));
}
BENCHMARK(BM_StabilityIntervalsAllModels);

void BM_VerifySuite(benchmark::State& state) {
  const auto catalog = qcf::Catalog::builtin();
  qcf::VerifyOptions opts;
  opts.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qcf::run_verification(catalog, opts));
}
BENCHMARK(BM_VerifySuite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace
