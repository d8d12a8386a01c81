#include <benchmark/benchmark.h>

#include <vector>

#include "dunkl/hankel.hpp"
#include "dunkl/potential.hpp"
#include "dunkl/specfun.hpp"

using namespace dunkl;

static void BM_BesselJ(benchmark::State& state) {
  const double lam = static_cast<double>(state.range(0)) / 2.0;
  double t = 0.0;
  for (auto _ : state) {
    t += 0.173;
    if (t > 100.0) t = 0.0;
    benchmark::DoNotOptimize(bessel_j_normalized(lam, t));
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(1)->Arg(4);

static void BM_AngularRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(make_angular_rule(1.3, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_AngularRule)->Arg(16)->Arg(64)->Arg(256);

static void BM_Psi(benchmark::State& state) {
  const auto p = params_from_lambda(1.0);
  double rho = 0.0;
  for (auto _ : state) {
    rho += 0.0131;
    if (rho >= 1.0) rho = 0.0;
    benchmark::DoNotOptimize(psi(rho, 1.5, p));
  }
}
BENCHMARK(BM_Psi);

static void BM_Hankel(benchmark::State& state) {
  const auto p = params_from_lambda(0.5);
  const auto grid = RadialGrid::log_spaced(1e-4, 1e3, static_cast<std::size_t>(state.range(0)));
  const auto f = RadialFunction::from_tag(grid, GaussianTag{0.5, 1.0});
  std::vector<double> rho;
  for (int k = 0; k < 64; ++k) rho.push_back(0.1 * k);
  for (auto _ : state) benchmark::DoNotOptimize(hankel_values(f, rho, p));
}
BENCHMARK(BM_Hankel)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_Riesz(benchmark::State& state) {
  const auto p = params_from_lambda(0.5);
  const auto grid = RadialGrid::log_spaced(1e-6, 1e6, static_cast<std::size_t>(state.range(0)));
  const auto f = RadialFunction::from_tag(grid, GaussianTag{0.5, 1.0});
  const auto spec = make_riesz_spec(p, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(riesz_apply(f, spec));
}
BENCHMARK(BM_Riesz)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
