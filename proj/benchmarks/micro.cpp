#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ternwave/cdf97.hpp"
#include "ternwave/metrics.hpp"
#include "ternwave/ternary.hpp"
#include "ternwave/transform2d.hpp"

namespace tw = ternwave;

namespace {

std::vector<double> noise(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

tw::Plane noise_plane(std::size_t side) {
  tw::Plane p(side, side);
  p.data = noise(side * side);
  return p;
}

void BM_TernaryLevel(benchmark::State& state, tw::TernaryCircuitSpec spec) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n);
  const tw::TernaryTransform t(spec);
  std::vector<double> out(n);
  for (auto _ : state) {
    t.forward(x, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK_CAPTURE(BM_TernaryLevel, type_i, tw::TernaryCircuitSpec::type_i())->Arg(3000)->Arg(30000);
BENCHMARK_CAPTURE(BM_TernaryLevel, type_ii, tw::TernaryCircuitSpec::type_ii())->Arg(3000)->Arg(30000);

void BM_CdfLevel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n);
  for (auto _ : state) benchmark::DoNotOptimize(tw::forward_level_97(x));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(n));
}
BENCHMARK(BM_CdfLevel)->Arg(3000)->Arg(30000);

void BM_Forward2d(benchmark::State& state, tw::WaveletKind kind) {
  const tw::Plane p = noise_plane(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tw::forward2d(p, kind, 99));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(p.size()));
}
BENCHMARK_CAPTURE(BM_Forward2d, tern1, tw::WaveletKind::TernaryI)->Arg(243)->Arg(729);
BENCHMARK_CAPTURE(BM_Forward2d, tern2, tw::WaveletKind::TernaryII)->Arg(243)->Arg(729);
BENCHMARK_CAPTURE(BM_Forward2d, cdf97, tw::WaveletKind::Cdf97)->Arg(243)->Arg(729);

void BM_MsSsim(benchmark::State& state) {
  const tw::Plane a = noise_plane(static_cast<std::size_t>(state.range(0)));
  tw::Plane b = a;
  for (double& v : b.data) v *= 0.95;
  for (auto _ : state) benchmark::DoNotOptimize(tw::ms_ssim(a, b));
}
BENCHMARK(BM_MsSsim)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
