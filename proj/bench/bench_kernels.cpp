// Serial reference kernels against their OpenMP counterparts.
#include "stratobs/diophantine.hpp"
#include "stratobs/reconstruct.hpp"

#include <benchmark/benchmark.h>

namespace {

using stratobs::ExactReal;
using stratobs::ScanOptions;
using stratobs::kernels::Execution;

ScanOptions options(const benchmark::State& state) {
  ScanOptions o;
  o.execution = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  return o;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_ExactFloorGolden(benchmark::State& state) {
  const ExactReal xi = ExactReal::parse("quad:(-1+1*sqrt(5))/2");
  for (auto _ : state) benchmark::DoNotOptimize(stratobs::badly_approx_floor(xi, 1.0, 20000, options(state)));
  label(state);
}
BENCHMARK(BM_ExactFloorGolden)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FloatLinearForm(benchmark::State& state) {
  const ExactReal x1 = ExactReal::parse("cbrt:2"), x2 = ExactReal::parse("cbrt:4");
  for (auto _ : state)
    benchmark::DoNotOptimize(stratobs::linear_form_floor(x1, x2, 2.0, 60, 60, options(state)));
  label(state);
}
BENCHMARK(BM_FloatLinearForm)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MultiTime(benchmark::State& state) {
  const std::vector<ExactReal> taus{ExactReal::parse("cbrt:2"), ExactReal::parse("cbrt:4")};
  for (auto _ : state) benchmark::DoNotOptimize(stratobs::multi_time_floor_ratios(taus, 10000, options(state)));
  label(state);
}
BENCHMARK(BM_MultiTime)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Reconstruct(benchmark::State& state) {
  const auto sys = stratobs::WaveSystem::string();
  const auto layout = stratobs::ModeLayout::line(4096);
  const auto modal = stratobs::random_real_state(sys, layout, 7);
  const auto set = stratobs::gap_snapshots(modal, ExactReal::parse("quad:(-1+1*sqrt(5))/2"));
  const auto exec = state.range(0) == 0 ? Execution::serial : Execution::parallel;
  for (auto _ : state) benchmark::DoNotOptimize(stratobs::reconstruct(set, exec));
  label(state);
}
BENCHMARK(BM_Reconstruct)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
