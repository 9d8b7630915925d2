#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "adnls/diagnostics.hpp"
#include "adnls/integrator.hpp"
#include "adnls/lattice.hpp"
#include "adnls/spectral.hpp"

namespace {

using adnls::Complex;

adnls::LatticeConfig config_for(int n) {
  adnls::LatticeConfig config;
  config.n_sites = n;
  return config;
}

std::vector<Complex> random_field(std::size_t n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  std::vector<Complex> v(n);
  for (auto& z : v) z = {normal(rng), normal(rng)};
  return v;
}

void BM_Rhs(benchmark::State& state) {
  const auto config = config_for(static_cast<int>(state.range(0)));
  const auto kernel = adnls::build_kernel(config);
  const auto psi = random_field(static_cast<std::size_t>(config.n_sites));
  std::vector<Complex> out(psi.size());
  for (auto _ : state) {
    adnls::rhs_into(psi, out, kernel, config);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rhs)->RangeMultiplier(2)->Range(16, 512)->Complexity(benchmark::oNSquared);

void BM_Hamiltonian(benchmark::State& state) {
  const auto config = config_for(static_cast<int>(state.range(0)));
  const auto kernel = adnls::build_kernel(config);
  const auto psi = random_field(static_cast<std::size_t>(config.n_sites));
  for (auto _ : state) benchmark::DoNotOptimize(adnls::hamiltonian(psi, kernel, config));
}
BENCHMARK(BM_Hamiltonian)->RangeMultiplier(2)->Range(16, 512);

void BM_IntegrateSymmetric(benchmark::State& state) {
  const auto config = config_for(32);
  const auto kernel = adnls::build_kernel(config);
  const auto initial = adnls::rescale_to_norm(adnls::symmetric_profile(config), 12.5);
  adnls::IntegratorSettings settings;
  settings.t_final = 10.0;
  settings.n_samples = 100;
  for (auto _ : state) {
    auto traj = adnls::integrate(initial, kernel, config, settings);
    benchmark::DoNotOptimize(traj.samples.data());
  }
}
BENCHMARK(BM_IntegrateSymmetric)->Unit(benchmark::kMillisecond);

void BM_TimeDft(benchmark::State& state) {
  const auto series = random_field(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto coeffs = adnls::diagnostics::time_dft(series);
    benchmark::DoNotOptimize(coeffs.data());
  }
}
BENCHMARK(BM_TimeDft)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);

void BM_JHatDirect(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(adnls::spectral::j_hat_direct(0.3, 1.11, 1.0));
}
BENCHMARK(BM_JHatDirect);

}  // namespace

BENCHMARK_MAIN();
