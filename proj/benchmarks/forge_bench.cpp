#include <benchmark/benchmark.h>

#include <random>

#include "forge/bridge.hpp"

using namespace forge;

namespace {

FiniteMetricSpace generic_prefix(int p, std::size_t n) {
  AmbientSpace amb(p, 1);
  amb.grow_generic(n);
  std::vector<PointId> ids;
  for (PointId x = 0; x < n; ++x) ids.push_back(x);
  return amb.snapshot(ids);
}

void BM_validate_metric(benchmark::State& state) {
  auto s = generic_prefix(4, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(validate_metric(s).ok());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_validate_metric)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_enumerate_katetov(benchmark::State& state) {
  auto s = generic_prefix(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_katetov(s, s.points()).size());
}
BENCHMARK(BM_enumerate_katetov)->DenseRange(2, 5);

void BM_grow_generic(benchmark::State& state) {
  for (auto _ : state) {
    AmbientSpace amb(static_cast<int>(state.range(0)), 3);
    amb.grow_generic(200);
    benchmark::DoNotOptimize(amb.size());
  }
}
BENCHMARK(BM_grow_generic)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_is_large(benchmark::State& state) {
  int p = static_cast<int>(state.range(0));
  AmbientSpace amb(p, 5);
  amb.grow_generic(2);
  auto c = ColoringOracle::base_determined({0}, {{{1}, "x"}}, "y");
  Pair s{KatetovMap({0, 1}, {Rational(p), Rational(p)}), kRootCopy};
  for (auto _ : state) benchmark::DoNotOptimize(is_large(amb, c, {0}, s).large);
}
BENCHMARK(BM_is_large)->DenseRange(2, 5);

void BM_monochromatic_copy(benchmark::State& state) {
  int p = static_cast<int>(state.range(0));
  auto c = ColoringOracle::base_determined({0, 1}, {{{1, 1}, "r"}, {{p, p}, "r"}}, "g");
  EngineConfig cfg;
  cfg.N = 100;
  for (auto _ : state) benchmark::DoNotOptimize(monochromatic_copy(c, p, 7, cfg).cert.orbit_prefix.size());
}
BENCHMARK(BM_monochromatic_copy)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_verify_certificate(benchmark::State& state) {
  auto c = ColoringOracle::base_determined({0}, {{{2}, "e"}}, "o");
  EngineConfig cfg;
  cfg.N = static_cast<std::size_t>(state.range(0));
  auto cert = monochromatic_copy(c, 3, 7, cfg).cert;
  for (auto _ : state) benchmark::DoNotOptimize(verify_certificate(cert).ok());
}
BENCHMARK(BM_verify_certificate)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_build_Ym(benchmark::State& state) {
  std::mt19937_64 rng(2);
  auto sample = random_rational_sample(static_cast<std::size_t>(state.range(0)), 12, rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_Ym(sample, 3).full.size());
}
BENCHMARK(BM_build_Ym)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
