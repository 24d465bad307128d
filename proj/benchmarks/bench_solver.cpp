#include <benchmark/benchmark.h>

#include <cmath>
#include <optional>

#include "nldiff/nonlocal_solver.hpp"
#include "nldiff/rescaling.hpp"

namespace {

void BM_StrangStep(benchmark::State& state) {
  const nldiff::Grid g(1, static_cast<std::size_t>(state.range(0)), static_cast<double>(state.range(0)) / 32.0);
  const auto symbol = nldiff::spectral_symbol(nldiff::KernelSpec(nldiff::KernelFamily::epanechnikov, 1.0, 1), g);
  const auto p = state.range(1) == 0 ? std::nullopt : std::optional<double>(static_cast<double>(state.range(1)));
  auto u = nldiff::representative_datum(nldiff::ScalingFamily(nldiff::FamilyKind::power_law, 1.0, 0.5, 1), g);
  for (auto _ : state) {
    u = nldiff::step_strang(u, symbol, p, 0.05);
    benchmark::DoNotOptimize(u.values().data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_StrangStep)->ArgsProduct({{1 << 12, 1 << 14}, {0, 3, 5, 7}});

void BM_Evolve(benchmark::State& state) {
  const nldiff::Grid g(1, 1 << 13, 256.0);
  const nldiff::KernelSpec kernel(nldiff::KernelFamily::epanechnikov, 1.0, 1);
  const auto u0 = nldiff::representative_datum(nldiff::ScalingFamily(nldiff::FamilyKind::power_law, 1.0, 0.5, 1), g);
  const nldiff::SolveConfig config{kernel, g, 5.0, 0.05, 16.0, {1.0, 4.0, 16.0}};
  for (auto _ : state) benchmark::DoNotOptimize(nldiff::evolve(config, u0));
}
BENCHMARK(BM_Evolve)->Unit(benchmark::kMillisecond);

}  // namespace
