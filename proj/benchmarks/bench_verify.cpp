#include <benchmark/benchmark.h>

#include <random>

#include "qgl/constructors.hpp"
#include "qgl/qgroupoid.hpp"
#include "qgl/sepid.hpp"
#include "qgl/weights.hpp"

namespace {

void BM_VerifyFunctionModel(benchmark::State& state) {
  const auto qg = qgl::function_algebra_model(qgl::pair_groupoid(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qgl::verify_quantum_groupoid(qg).verdict());
  }
  state.counters["dim_A"] = static_cast<double>(qg.A.total_dim());
}
BENCHMARK(BM_VerifyFunctionModel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_VerifyConvolutionModel(benchmark::State& state) {
  const auto qg = qgl::convolution_algebra_model(qgl::pair_groupoid(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qgl::verify_quantum_groupoid(qg).verdict());
  }
  state.counters["dim_A"] = static_cast<double>(qg.A.total_dim());
}
BENCHMARK(BM_VerifyConvolutionModel)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_BuildConvolutionModel(benchmark::State& state) {
  const auto g = qgl::pair_times_cyclic(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qgl::convolution_algebra_model(g).A.total_dim());
  }
}
BENCHMARK(BM_BuildConvolutionModel)->DenseRange(1, 3);

void BM_SolveSeparability(benchmark::State& state) {
  const auto base = qgl::matrix_base(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qgl::solve_separability_idempotent(base).idempotent_residual);
  }
}
BENCHMARK(BM_SolveSeparability)->DenseRange(2, 5);

void BM_ModularAutomorphism(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const qgl::BlockAlgebra a({static_cast<int>(state.range(0))});
  const qgl::Weight w(a, qgl::random_positive(a, rng));
  const auto x = qgl::random_element(a, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.modular(qgl::cd(0.3, 0.5), x).coords().data());
  }
}
BENCHMARK(BM_ModularAutomorphism)->RangeMultiplier(2)->Range(2, 16);

}  // namespace
BENCHMARK_MAIN();
