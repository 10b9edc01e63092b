#include <benchmark/benchmark.h>

#include "ngonstab/eigen_qr.hpp"
#include "ngonstab/linsys.hpp"
#include "ngonstab/operator_positivity.hpp"
#include "ngonstab/spectrum.hpp"

using namespace ngonstab;

namespace {

// args: beta * 100, e * 100
void BM_BetaMonodromy(benchmark::State& state) {
  const auto kind = beta_system(state.range(0) / 100.0, state.range(1) / 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_solution(kind).monodromy.data());
}
BENCHMARK(BM_BetaMonodromy)->Args({136, 0})->Args({136, 50})->Args({136, 90})->Unit(benchmark::kMillisecond);

void BM_EssentialMonodromy(benchmark::State& state) {
  const auto kind = essential_system(static_cast<int>(state.range(0)), 2, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fundamental_solution(kind).monodromy.data());
}
BENCHMARK(BM_EssentialMonodromy)->Arg(5)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_QrEigenvalues(benchmark::State& state) {
  const Matrix m = fundamental_solution(full_system(static_cast<int>(state.range(0)), 0.3)).monodromy;
  for (auto _ : state) benchmark::DoNotOptimize(qr_eigenvalues(m).data());
}
BENCHMARK(BM_QrEigenvalues)->Arg(3)->Arg(5);

void BM_Classify(benchmark::State& state) {
  const Matrix m = fundamental_solution(essential_system(7, 2, 0.3)).monodromy;
  for (auto _ : state) benchmark::DoNotOptimize(classify(m).unit_margin);
}
BENCHMARK(BM_Classify);

void BM_ClassifyNgon(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(classify_ngon(static_cast<int>(state.range(0)), 0.4).verdict);
}
BENCHMARK(BM_ClassifyNgon)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_GalerkinMinEigenvalue(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto op = galerkin_assemble(galerkin::Planar{1.36}, 0.6, 0.25, N);
    benchmark::DoNotOptimize(min_eigenvalue(op));
  }
}
BENCHMARK(BM_GalerkinMinEigenvalue)->Arg(16)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
