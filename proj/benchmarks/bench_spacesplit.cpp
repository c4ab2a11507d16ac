#include "spacesplit/spacesplit.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace spacesplit;

ParamVector bench_params() {
  ParamVector s(4);
  s << 0.1, 0.05, 0.1, -0.05;
  return s;
}

void BM_ApplyMap(benchmark::State& state) {
  const BakerMap m;
  const ParamVector s = bench_params();
  Rng rng(1);
  Point x = m.sample_domain(rng);
  for (auto _ : state) {
    x = m.apply(x, s);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_ApplyMap);

void BM_TangentStackStep(benchmark::State& state) {
  const BakerMap m;
  const ParamVector s = bench_params();
  const long steps = 4096;
  const Trajectory t = generate_trajectory(m, s, 2, 0, steps);
  TangentOptions opts;
  opts.diagnostics = state.range(0) != 0;
  TangentStack stack(m, s, Perturbation::along(0, 4), opts);
  Rng rng(3);
  stack.reset(0, random_unit_vector(rng, 2));
  long n = 0;
  for (auto _ : state) {
    if (n + 1 == steps) {
      stack.reset(0, stack.frame().q);
      n = 0;
    }
    stack.advance(t.point(n++));
    benchmark::DoNotOptimize(stack.frame().c);
  }
}
BENCHMARK(BM_TangentStackStep)->Arg(0)->Arg(1);

void BM_S3Sensitivity(benchmark::State& state) {
  const BakerMap m;
  const CosineObservable J;
  S3Config cfg;
  cfg.N = state.range(0);
  for (auto _ : state) {
    const auto r = s3_sensitivity(m, bench_params(), 0, J, cfg);
    benchmark::DoNotOptimize(r.total);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_S3Sensitivity)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
