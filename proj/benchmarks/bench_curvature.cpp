#include "qcf/catalog.hpp"
#include "qcf/homogeneous.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_DecomposeCatalogModel(benchmark::State& state) {
  const auto model = qcf::ModelSpace::round_sphere(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(qcf::curvature_data(model));
}
BENCHMARK(BM_DecomposeCatalogModel)->DenseRange(3, 8);

void BM_BergerCurvatureDouble(benchmark::State& state) {
  const auto c = qcf::named_algebra<double>("su2");
  const auto g = qcf::berger_metric(0.7);
  for (auto _ : state) benchmark::DoNotOptimize(qcf::curvature(c, g));
}
BENCHMARK(BM_BergerCurvatureDouble);

void BM_GradientDouble(benchmark::State& state) {
  const auto c = qcf::named_algebra<double>(state.range(0) == 3 ? "su2" : "su2+R");
  const int n = c.dim();
  std::vector<double> d(n, 1.0);
  d[0] = 1.3;
  const auto g = qcf::MetricFrame<double>::diagonal(d);
  for (auto _ : state) benchmark::DoNotOptimize(qcf::gradient_F(c, g, -0.4));
}
BENCHMARK(BM_GradientDouble)->Arg(3)->Arg(4);

void BM_GradientExact(benchmark::State& state) {
  const auto c = qcf::named_algebra<qcf::Rational>("su2");
  const auto g = qcf::berger_metric(qcf::rat(2, 13));
  for (auto _ : state) benchmark::DoNotOptimize(qcf::normalized_gradient(c, g, qcf::rat(-2, 5)));
}
BENCHMARK(BM_GradientExact);

}  // namespace
