// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <random>
#include <string>

#include "oddpair/curve.hpp"
#include "oddpair/pairing.hpp"
#include "oddpair/params.hpp"
#include "oddpair/tower.hpp"

using namespace oddpair;

namespace {

const char* const kLabels[] = {"k9-paper-128", "k15-paper-192", "k27-paper-256"};

const PairingContext& context(int i) {
  static std::map<int, std::unique_ptr<PairingContext>> cache;
  auto& c = cache[i];
  if (!c) c = make_context(*find_preset(kLabels[i]), 1);
  return *c;
}

void BM_FieldMul(benchmark::State& st) {
  const auto& ctx = context(st.range(0));
  std::mt19937_64 rng(1);
  Fe a = ctx.field->random(rng), b = ctx.field->random(rng);
  CostLedger l;
  for (auto _ : st) benchmark::DoNotOptimize(a = ctx.field->mul(a, b, l));
  st.SetLabel(kLabels[st.range(0)]);
}

void BM_TopMul(benchmark::State& st) {
  const auto& ctx = context(st.range(0));
  const auto& T = *ctx.tower;
  std::mt19937_64 rng(1);
  Elt a = T.random(T.top(), rng), b = T.random(T.top(), rng);
  CostLedger l;
  TowerOps o(T, l);
  for (auto _ : st) benchmark::DoNotOptimize(a = o.mul(a, b));
  st.SetLabel(kLabels[st.range(0)]);
}

void BM_TopSqr(benchmark::State& st) {
  const auto& ctx = context(st.range(0));
  const auto& T = *ctx.tower;
  std::mt19937_64 rng(1);
  Elt a = T.random(T.top(), rng);
  CostLedger l;
  TowerOps o(T, l);
  for (auto _ : st) benchmark::DoNotOptimize(a = o.sqr(a));
  st.SetLabel(kLabels[st.range(0)]);
}

void BM_MillerLoop(benchmark::State& st) {
  const auto& ctx = context(st.range(0));
  Pairing e(ctx);
  for (auto _ : st) {
    CostLedger l;
    benchmark::DoNotOptimize(e.miller_loop(ctx.g2, ctx.g1, l));
  }
  st.SetLabel(kLabels[st.range(0)]);
}

void BM_FinalExp(benchmark::State& st) {
  const auto& ctx = context(st.range(0));
  Pairing e(ctx);
  CostLedger l0;
  Elt f = e.miller_loop(ctx.g2, ctx.g1, l0);
  for (auto _ : st) {
    CostLedger l;
    benchmark::DoNotOptimize(e.final_exp(f, l));
  }
  st.SetLabel(kLabels[st.range(0)]);
}

void BM_Pairing(benchmark::State& st) {
  const auto& ctx = context(st.range(0));
  Pairing e(ctx);
  for (auto _ : st) benchmark::DoNotOptimize(e.optimal_ate(ctx.g2, ctx.g1));
  st.SetLabel(kLabels[st.range(0)]);
}

}  // namespace

BENCHMARK(BM_FieldMul)->DenseRange(0, 2);
BENCHMARK(BM_TopMul)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_TopSqr)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_MillerLoop)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FinalExp)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Pairing)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
