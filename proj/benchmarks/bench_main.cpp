#include <benchmark/benchmark.h>

#include "lempert/covering.hpp"
#include "lempert/interpolation.hpp"
#include "lempert/node_optimizer.hpp"
#include "lempert/pick.hpp"

using namespace lempert;

static void BM_PickFeasible(benchmark::State& state) {
  PickProblem p;
  const int n = static_cast<int>(state.range(0));
  for (int k = 0; k < n; ++k) {
    p.nodes.push_back(std::polar(0.3 + 0.6 * k / n, 0.7 * k));
    p.targets.push_back(std::polar(0.2 + 0.5 * k / n, -1.1 * k));
  }
  for (auto _ : state) benchmark::DoNotOptimize(pick_feasible(p));
}
BENCHMARK(BM_PickFeasible)->Arg(2)->Arg(5)->Arg(8);

static void BM_Lemma4(benchmark::State& state) {
  const Lemma4Problem p{{Complex(0.3, 0.1), Complex(-0.2, 0.5), Complex(0.0), Complex(0.6, -0.2)}, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(lemma4_solve(p));
}
BENCHMARK(BM_Lemma4);

static void BM_GreenAnnulus(benchmark::State& state) {
  const auto D = PlaneDomain::annulus(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(green_plane(D, Complex(0.6, 0.2), Complex(0.5, -0.3)));
}
BENCHMARK(BM_GreenAnnulus);

static void BM_GreenPunctured(benchmark::State& state) {
  const auto D = PlaneDomain::punctured_disc();
  for (auto _ : state) benchmark::DoNotOptimize(green_plane(D, Complex(0.6, 0.2), Complex(0.5, -0.3)));
}
BENCHMARK(BM_GreenPunctured);

static void BM_BidiscOptimizer(benchmark::State& state) {
  const auto A = PoleSet(PlaneDomain::unit_disc(), {0.5, Complex(0, 0.5)});
  const auto B = PoleSet(PlaneDomain::unit_disc(), {0.5, -0.5});
  OptimizerSettings s;
  s.restarts = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bidisc_lempert(A, B, 0.0, 0.0, s));
}
BENCHMARK(BM_BidiscOptimizer)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
