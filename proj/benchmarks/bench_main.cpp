#include <benchmark/benchmark.h>

#include "sgl/expression.hpp"
#include "sgl/sgl_analysis.hpp"
#include "sgl/suite.hpp"

using namespace sgl;

namespace {

struct Example {
  CatalogEntry e = build_entry("example_3_2");
  std::vector<VecX> us = sample_points(e.immersion.box, 8, 42);
  FrameBuilder b{e.immersion, e.ambient, us.front()};
};

const Example& example() {
  static const Example ex;
  return ex;
}

void BM_FrameBuild(benchmark::State& state) {
  const Example& ex = example();
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(ex.b(ex.us[i++ % ex.us.size()]));
}
BENCHMARK(BM_FrameBuild);

void BM_CheckSGL(benchmark::State& state) {
  const Example& ex = example();
  for (auto _ : state) benchmark::DoNotOptimize(check_sgl(ex.b, ex.us));
}
BENCHMARK(BM_CheckSGL)->Unit(benchmark::kMillisecond);

void BM_AmbientAxioms(benchmark::State& state) {
  RunConfig c;
  c.samples = static_cast<int>(state.range(0));
  const CatalogEntry e = build_entry("example_3_2");
  for (auto _ : state) benchmark::DoNotOptimize(run_axioms(e, c));
}
BENCHMARK(BM_AmbientAxioms)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_ExpressionEval(benchmark::State& state) {
  const Expression expr =
      Expression::parse("sin(u3)*sinh(u4) + u1*cosh(0.4) - u2^2 / (1 + u5^2)", 7);
  VecX u = VecX::LinSpaced(7, -0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(expr(u));
}
BENCHMARK(BM_ExpressionEval);

void BM_ExpressionSecondOrder(benchmark::State& state) {
  const Expression expr = Expression::parse("sin(u3)*sinh(u4) + u1*u2^3", 7);
  Vec<D2> u(7);
  for (int i = 0; i < 7; ++i) u(i) = D2(D1(0.1 * i));
  for (auto _ : state) benchmark::DoNotOptimize(expr.eval<D2>(u));
}
BENCHMARK(BM_ExpressionSecondOrder);

}  // namespace

BENCHMARK_MAIN();
