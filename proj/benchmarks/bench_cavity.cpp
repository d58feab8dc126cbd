#include <benchmark/benchmark.h>

#include "cavity/assembly.hpp"
#include "cavity/cross_block.hpp"
#include "cavity/singular_block.hpp"

using namespace cavity;

namespace {

ProblemSpec example1(Polarization pol) {
  ProblemSpec s;
  s.polarization = pol;
  s.wave.kappa0 = 1.5;
  s.wave.theta = kPi / 9;
  s.N = 30;
  s.cavities = {Cavity{-0.5, 0.5, {Layer{0.0, -1.5, 1.5}}}};
  return validate(s);
}

}  // namespace

static void BM_SingularBlockTable(benchmark::State& state) {
  QuadratureConfig cfg;
  cfg.panels = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(singular_block_table(30, KernelScale(1.5 / (2 * kPi)), TrigKind::cosine, cfg));
}
BENCHMARK(BM_SingularBlockTable)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_SolveExample1(benchmark::State& state) {
  const ProblemSpec s = example1(state.range(0) ? Polarization::te : Polarization::tm);
  for (auto _ : state) benchmark::DoNotOptimize(solve(s).solution.rcond);
}
BENCHMARK(BM_SolveExample1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_CrossBlock(benchmark::State& state) {
  ProblemSpec s;
  s.cavities = {Cavity{-0.6, -0.1, {Layer{0.0, -0.1, kPi}}}, Cavity{0.0, 0.2, {Layer{0.0, -0.5, kPi}}}};
  s = validate(s);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        cross_block_table(s.cavities[0], s.cavities[1], kPi, 40, s.quad, true, true));
}
BENCHMARK(BM_CrossBlock)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
