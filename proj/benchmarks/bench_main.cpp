#include <benchmark/benchmark.h>

#include <random>

#include <spsw/product.hpp>
#include <spsw/swop.hpp>
#include <spsw/torus.hpp>

using namespace spsw;

namespace {

Spinord random_spinor(std::mt19937_64& rng) {
  Spinord s;
  s.f = standard_normal(rng);
  for (int i = 0; i < 3; ++i) s.sigma[i] = standard_normal(rng);
  return s;
}

void BM_MomentExplicit(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Spinord s = random_spinor(rng);
  for (auto _ : state) benchmark::DoNotOptimize(moment_explicit(s));
}
BENCHMARK(BM_MomentExplicit);

void BM_SwResidual(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Point center{0.1, -0.2, 0.15};
  Configuration c;
  c.a = random_polynomial_field(rng, 9, 3, 0.3, center);
  c.f = random_polynomial_field(rng, 1, 3, 0.3, center);
  c.sigma = random_polynomial_field(rng, 3, 3, 0.3, center);
  const Evaluator ev{Chart(ChartKind::ball), state.range(0) ? Backend::fd() : Backend::ad()};
  for (auto _ : state) benchmark::DoNotOptimize(sw_residual(ev, c, center));
}
BENCHMARK(BM_SwResidual)->Arg(0)->Arg(1)->ArgName("fd");

void BM_TorusSwMap(benchmark::State& state) {
  const TorusGrid g(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(3);
  const GridField x = random_config(g, rng, 1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sw_map(g, x, Normalization::consistent()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.points()));
}
BENCHMARK(BM_TorusSwMap)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_TorusDswApply(benchmark::State& state) {
  const TorusGrid g(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(4);
  const GridField x = random_config(g, rng, 1, 0.5);
  const GridField v = random_config(g, rng, 1, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(dsw_apply(g, x, v, Normalization::consistent()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.points()));
}
BENCHMARK(BM_TorusDswApply)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_LastBlockSolve(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(last_block_solve(static_cast<int>(state.range(0)), 1e-8, 0.5));
}
BENCHMARK(BM_LastBlockSolve)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
