#include <benchmark/benchmark.h>

#include <cmath>

#include "nldiff/field.hpp"
#include "nldiff/fundamental.hpp"
#include "nldiff/kernel.hpp"

namespace {

nldiff::Field wave(const nldiff::Grid& g) {
  return nldiff::Field::sample(g, [](const nldiff::Point& x) { return 1.0 + std::cos(x[0]) * std::cos(x[1]); });
}

void BM_Convolve1D(benchmark::State& state) {
  const nldiff::Grid g(1, static_cast<std::size_t>(state.range(0)), 32.0 * static_cast<double>(state.range(0)) / 1024.0);
  const auto symbol = nldiff::spectral_symbol(nldiff::KernelSpec(nldiff::KernelFamily::epanechnikov, 1.0, 1), g);
  const auto u = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(nldiff::convolve(u, symbol));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Convolve1D)->RangeMultiplier(4)->Range(1 << 10, 1 << 16);

void BM_Convolve2D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const nldiff::Grid g(2, n, 8.0 * static_cast<double>(n) / 256.0);
  const auto symbol = nldiff::spectral_symbol(nldiff::KernelSpec(nldiff::KernelFamily::quartic, 1.0, 2), g);
  const auto u = wave(g);
  for (auto _ : state) benchmark::DoNotOptimize(nldiff::convolve(u, symbol));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}
BENCHMARK(BM_Convolve2D)->Arg(256)->Arg(512);

void BM_SpectralSymbol(benchmark::State& state) {
  const nldiff::Grid g(1, static_cast<std::size_t>(state.range(0)), 256.0);
  const nldiff::KernelSpec k(nldiff::KernelFamily::bump, 2.9, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nldiff::spectral_symbol(k, g));
}
BENCHMARK(BM_SpectralSymbol)->Arg(1 << 14);

void BM_WField(benchmark::State& state) {
  const nldiff::Grid g(1, static_cast<std::size_t>(state.range(0)), 256.0);
  const nldiff::KernelSpec k(nldiff::KernelFamily::bump, 2.9, 1);
  for (auto _ : state) benchmark::DoNotOptimize(nldiff::w_field(k, g, 10.0));
}
BENCHMARK(BM_WField)->Arg(1 << 14);

}  // namespace
