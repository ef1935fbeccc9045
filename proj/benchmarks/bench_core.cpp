#include <benchmark/benchmark.h>

#include "wzwsle/blocks.hpp"
#include "wzwsle/invariant_space.hpp"
#include "wzwsle/sle_sim.hpp"

#include <random>

using namespace wzwsle;

namespace {

void BM_InvariantSpaceBuild(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    InvariantSpace space(InvariantCase::FundAntifund, n);
    benchmark::DoNotOptimize(space.coupling_matrix(0, 1));
  }
}
BENCHMARK(BM_InvariantSpaceBuild)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SelfAdjointSpaceBuild(benchmark::State& state)
{
  for (auto _ : state) {
    InvariantSpace space(InvariantCase::SelfAdjointFund, 4);
    benchmark::DoNotOptimize(space.coupling_matrix(0, 1));
  }
}
BENCHMARK(BM_SelfAdjointSpaceBuild)->Unit(benchmark::kMillisecond);

void BM_KernelCheckExact(benchmark::State& state)
{
  const int n = static_cast<int>(state.range(0));
  const auto blk = make_one_point_block(BlockCase::SunFundLevel1, n);
  for (auto _ : state)
    benchmark::DoNotOptimize(kernel_check_1pt(blk, 2, Rational(2, n)));
}
BENCHMARK(BM_KernelCheckExact)->Arg(3)->Arg(6)->Unit(benchmark::kMicrosecond);

void BM_MartingaleGeneratorAssembly(benchmark::State& state)
{
  const InvariantSpace space(InvariantCase::FundAntifund, 3);
  const auto blk = make_one_point_block(BlockCase::SunFundLevel1, 3);
  for (auto _ : state) {
    const auto m = martingale_generator(space.system(), {Complex(0, 1), Complex(0, -1)}, 2,
                                        Rational(2, 3), blk.nu, {blk.h_lambda, blk.h_lambda});
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_MartingaleGeneratorAssembly)->Unit(benchmark::kMillisecond);

void BM_PathSteps(benchmark::State& state)
{
  // full per-step cost (noise, gauge increment, Loewner update) per case
  const int n = static_cast<int>(state.range(0));
  const BlockCase bc = n == 2 ? BlockCase::Su2Level1
                              : (n == 3 ? BlockCase::SunFundLevel1 : BlockCase::SunSelfAdjLevel1);
  const OnePointSystem sys(bc, n);
  const double dt = 1e-4, tau = 0.5, kappa = 2.0;
  const double sqdt = std::sqrt(dt);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  std::vector<double> theta(sys.algebra_dim());
  PathState st = make_initial_state(sys, Complex(0, 1));
  for (auto _ : state) {
    const double dxi = sqdt * normal(rng);
    for (auto& t : theta) t = sqdt * normal(rng);
    step_gauge(sys, st, dt, theta.data(), tau);
    step_sle(st, dt, dxi, kappa, 0.0);
    if (st.s.w1.imag() < 0.5) st = make_initial_state(sys, Complex(0, 1));
  }
  benchmark::DoNotOptimize(st.phi);
}
BENCHMARK(BM_PathSteps)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

void BM_Observable(benchmark::State& state)
{
  const OnePointSystem sys(BlockCase::SunSelfAdjLevel1, 4);
  const PathState st = make_initial_state(sys, Complex(0, 1));
  for (auto _ : state) benchmark::DoNotOptimize(observable(sys, st));
}
BENCHMARK(BM_Observable)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
