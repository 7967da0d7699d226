#include <benchmark/benchmark.h>

#include <radspec/ordering.hpp>
#include <radspec/quadrature.hpp>
#include <radspec/specialfn.hpp>
#include <radspec/spectra.hpp>

using namespace radspec;

static void BM_MomentCompact(benchmark::State& state) {
  const RadialSymbol v = parse_symbol("sin(20*r)*chi(0,0.7)");
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moment_compact(v, s, 1.0, 1e-12));
}
BENCHMARK(BM_MomentCompact)->Arg(1)->Arg(101)->Arg(1001);

static void BM_MomentGaussian(benchmark::State& state) {
  const RadialSymbol v = parse_symbol("exp(-r^4)");
  const double s = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(moment_gaussian(v, s, 1e-12));
}
BENCHMARK(BM_MomentGaussian)->Arg(1)->Arg(101)->Arg(1001);

static void BM_OscillatoryMoment(benchmark::State& state) {
  const auto k = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(oscillatory_moment(2, 4, k, 1e-10));
}
BENCHMARK(BM_OscillatoryMoment)->Arg(5)->Arg(100)->Arg(300);

static void BM_BesselBall(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bessel_l2_ball_log(nu, 10.0));
}
BENCHMARK(BM_BesselBall)->Arg(1)->Arg(50)->Arg(300);

static void BM_Spectrum(benchmark::State& state) {
  const SpaceSpec space = SpaceSpec::bergman(SpaceKind::BergmanComplex, 2, 1.0);
  const RadialSymbol v = parse_symbol("chi(0.4,0.8) - 5*chi(0,0.3)");
  SpectrumOptions o;
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(spectrum(space, v, static_cast<unsigned>(state.range(0)), 1e-12, o));
}
BENCHMARK(BM_Spectrum)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_SharpnessShare(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reorder_share(sharpness_bijection(2.0, n), 2.0, n));
}
BENCHMARK(BM_SharpnessShare)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
