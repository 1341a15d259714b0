#include <benchmark/benchmark.h>

#include <random>

#include <asyncnoma/corr.hpp>
#include <asyncnoma/fading.hpp>
#include <asyncnoma/numerics.hpp>
#include <asyncnoma/pulse.hpp>
#include <asyncnoma/regions.hpp>

using namespace anoma;

namespace {

Scenario two_users(Pulse pulse) {
  Scenario s;
  s.users = make_users(std::vector<double>{0.1, 1.0});
  s.delays = {0.0, 0.5};
  s.pulse = std::move(pulse);
  return s;
}

}  // namespace

static void BM_OverallPulseRrc(benchmark::State& state) {
  const Pulse p = make_pulse(PulseKind::RootRaisedCosine, 1.0, 0.5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(OverallPulse(p)(0.3));
}
BENCHMARK(BM_OverallPulseRrc)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_Iui(benchmark::State& state) {
  const OverallPulse g(make_pulse(PulseKind::RootRaisedCosine, 1.0, 0.5, 4));
  double tau = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(iui(g, tau));
    tau = tau > 0.99 ? 0.0 : tau + 0.01;
  }
}
BENCHMARK(BM_Iui);

static void BM_BuildR(benchmark::State& state) {
  const OverallPulse g(make_pulse(PulseKind::RootRaisedCosine, 1.0, 0.5, 4));
  const DelayProfile d({0.0, 0.3, 0.7});
  const auto N = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_R(g, d, N).dense().data());
}
BENCHMARK(BM_BuildR)->RangeMultiplier(2)->Range(8, 64);

static void BM_JacobiEigh(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  std::mt19937_64 rng(1);
  std::normal_distribution<double> d;
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = m(j, i) = d(rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(eigh(m).values.data());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_JacobiEigh)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed)->Unit(benchmark::kMicrosecond);

static void BM_Region(benchmark::State& state) {
  const Scenario s = two_users(make_pulse(PulseKind::Rect));
  const auto method = static_cast<Method>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(region(s, method, 201).points.size());
  state.SetLabel(std::string(to_string(method)));
}
BENCHMARK(BM_Region)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

static void BM_ThreeUserApNoma(benchmark::State& state) {
  Scenario s;
  s.users = make_users(std::vector<double>{0.1, 0.5, 1.0});
  s.delays = {0.0, 0.3, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(region(s, Method::APNoma, 61).points.size());
}
BENCHMARK(BM_ThreeUserApNoma)->Unit(benchmark::kMillisecond);

static void BM_ErgodicRegion(benchmark::State& state) {
  const Scenario s = two_users(make_pulse(PulseKind::Rect));
  FadingConfig c;
  c.realizations = static_cast<std::size_t>(state.range(0));
  c.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ergodic_region(s, Method::APNoma, c, 101).region.points.size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ErgodicRegion)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
