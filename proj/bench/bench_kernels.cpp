#include <benchmark/benchmark.h>

#include "bandapprox/kernels.hpp"
#include "bandapprox/solutions.hpp"

namespace {

using namespace bandapprox;

const Construction& fixture() {
  static const Construction c = [] {
    FamilyParams p;
    p.h = 0.3;
    p.v = 2;
    return forward_construct(Family::Genus2Stiefel, 0.4, 5, 2, p);
  }();
  return c;
}

std::vector<double> grid(int n) {
  const BandSystem& b = fixture().bands;
  return linspace(b.eminus.lo, b.e2plus.hi, n);
}

void BM_EvaluateSerial(benchmark::State& st) {
  const auto xs = grid(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_serial(fixture().solution, xs));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_EvaluateParallel(benchmark::State& st) {
  const auto xs = grid(int(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_parallel(fixture().solution, xs));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_DeviationSerial(benchmark::State& st) {
  const auto xs = grid(int(st.range(0)));
  const auto bands = fixture().bands.bands();
  for (auto _ : st) benchmark::DoNotOptimize(max_deviation_serial(fixture().solution, bands, xs));
}

void BM_DeviationParallel(benchmark::State& st) {
  const auto xs = grid(int(st.range(0)));
  const auto bands = fixture().bands.bands();
  for (auto _ : st) benchmark::DoNotOptimize(max_deviation_parallel(fixture().solution, bands, xs));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeviationSerial)->Arg(2048)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeviationParallel)->Arg(2048)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
