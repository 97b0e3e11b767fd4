#include <benchmark/benchmark.h>

#include "torcor/analysis.hpp"

namespace {

using namespace torcor;

void BM_field_mul(benchmark::State& state) {
  const FieldCtx ctx(7, 2);
  std::uint32_t x = ctx.generator().packed, y = 1;
  for (auto _ : state) {
    y = ctx.rmul(y, x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_field_mul);

void BM_correlation_batch(benchmark::State& state) {
  const FieldCtx ctx(int(state.range(0)), int(state.range(1)));
  const IdentificationMap idmap(ctx);
  const auto labels = IrrepLabel::in_scope(ctx);
  FieldElem alpha = ctx.zero();
  for (std::uint32_t r = 1; r < ctx.q(); ++r) {
    alpha = ctx.from_rank(Level::Ext, r);
    if (!ctx.is_square(alpha)) break;
  }
  const TorusPair tp(ctx, alpha, ctx.one(Level::Ext));
  for (auto _ : state) {
    auto v = correlation_modp_batch(labels, tp, idmap);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_correlation_batch)->Args({13, 1})->Args({7, 2});

void BM_brauer_scalars(benchmark::State& state) {
  const FieldCtx ctx(7, 2);
  FieldElem alpha = ctx.zero();
  for (std::uint32_t r = 1; r < ctx.q(); ++r) {
    alpha = ctx.from_rank(Level::Ext, r);
    if (!ctx.is_square(alpha)) break;
  }
  BrauerEngine engine(ctx, WeightDigits::of(((long long)(ctx.q()) - 1) / 2, ctx));
  engine.set_alpha(alpha);
  const FieldElem u = ctx.one(Level::Ext);
  for (auto _ : state) {
    auto st = engine.scalars(u);
    benchmark::DoNotOptimize(st);
  }
}
BENCHMARK(BM_brauer_scalars);

void BM_legendre_cache(benchmark::State& state) {
  for (auto _ : state) {
    LegendreCache cache(int(state.range(0)));
    benchmark::DoNotOptimize(cache.max_r());
  }
}
BENCHMARK(BM_legendre_cache)->Arg(64)->Arg(168);

void BM_factor_shape_g3(benchmark::State& state) {
  const FieldCtx ctx(int(state.range(0)), 1);
  const LegendreCache cache(ctx.p());
  const FqPoly g3 = moment_G(cache, 3, ctx);
  for (auto _ : state) {
    auto shape = factor_shape(g3);
    benchmark::DoNotOptimize(shape);
  }
}
BENCHMARK(BM_factor_shape_g3)->Arg(13)->Arg(31);

}  // namespace

BENCHMARK_MAIN();
