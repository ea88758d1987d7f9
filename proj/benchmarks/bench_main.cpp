#include "nijenhuis/geomcheck.hpp"
#include "nijenhuis/minimality.hpp"
#include "nijenhuis/symring.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace nijenhuis;

namespace {

GeomContext make_ctx(SpaceTag tag, RepKind kind) {
  const auto space = build_space(tag);
  return GeomContext(space, rep_for_space(space, kind), Mutation::None);
}

SpaceTag tag_for(int which, int n) {
  switch (which) {
    case 0: return {SpaceKind::AIII, n, n / 2};
    case 1: return {SpaceKind::BDI, n, 0};
    default: return {SpaceKind::CI, n, 0};
  }
}

void BM_ExpSkew(benchmark::State& state) {
  const auto ctx = make_ctx({SpaceKind::AIII, static_cast<int>(state.range(0)), 1}, RepKind::Fundamental);
  std::mt19937_64 rng(7);
  const CMatrix x = ctx.random_k(rng);
  for (auto _ : state) benchmark::DoNotOptimize(exp_skew(x).u.data());
}
BENCHMARK(BM_ExpSkew)->Arg(4)->Arg(8)->Arg(16);

// One trial of each suite; range(0) selects AIII / BDI spin / CI.
void BM_SuiteTrial(benchmark::State& state, const char* suite) {
  const int which = static_cast<int>(state.range(0));
  const auto kind = which == 1 ? RepKind::Spin : RepKind::Fundamental;
  const auto ctx = make_ctx(tag_for(which, static_cast<int>(state.range(1))), kind);
  SuiteConfig cfg;
  cfg.trials = 1;
  cfg.seed = 11;
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(suite, ctx, cfg).max_residual);
}
BENCHMARK_CAPTURE(BM_SuiteTrial, explicit_formula, "explicit-formula")->Args({0, 5})->Args({1, 8})->Args({2, 4});
BENCHMARK_CAPTURE(BM_SuiteTrial, commutation, "commutation")->Args({0, 5})->Args({1, 8})->Args({2, 4});
BENCHMARK_CAPTURE(BM_SuiteTrial, basic_forms, "basic-forms")->Args({0, 5})->Args({1, 8})->Args({2, 4});

void BM_NogoScan(benchmark::State& state) {
  const auto family = state.range(0) == 6 ? Family::E6 : Family::E7;
  for (auto _ : state) benchmark::DoNotOptimize(nogo_report(family).no_minimal_rep);
}
BENCHMARK(BM_NogoScan)->Arg(6)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_VerifyEiii(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_eiii().pass);
}
BENCHMARK(BM_VerifyEiii)->Unit(benchmark::kMillisecond);

void BM_VerifyEvii(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(verify_evii().pass);
}
BENCHMARK(BM_VerifyEvii)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
