// Serial reference vs OpenMP kernels, plus the per-call projection cost that
// drives the matching hull vs hypersimplex comparison. Thread count follows CONVEXRELAX_THREADS
// (or OMP_NUM_THREADS); the serial variants ignore it.

#include "convexrelax/cones.hpp"
#include "convexrelax/denoise.hpp"
#include "convexrelax/geometry.hpp"
#include "convexrelax/parallel.hpp"
#include "convexrelax/tradeoff.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace convexrelax;

namespace {

TangentConeSpec nuclear_cone(int m) {
  const Vector anchor = flatten(SignalSet::cut_matrices(m).base_matrix());
  return TangentConeSpec::approx_via_body(ConvexBody::nuclear_ball(m, m, m), anchor);
}

void BM_ComplexitySerial(benchmark::State& state) {
  const TangentConeSpec spec = nuclear_cone(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mc_squared_complexity_serial(spec, 400, 1));
}

void BM_ComplexityParallel(benchmark::State& state) {
  const TangentConeSpec spec = nuclear_cone(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mc_squared_complexity(spec, 400, 1));
}

DenoiseTrialConfig risk_config(int m) {
  return {SignalSet::cut_matrices(m), ConvexBody::elliptope(m), 1.0, 8, 100, 1};
}

void BM_RiskSerial(benchmark::State& state) {
  const DenoiseTrialConfig config = risk_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_risk_serial(config));
}

void BM_RiskParallel(benchmark::State& state) {
  const DenoiseTrialConfig config = risk_config(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(empirical_risk(config));
}

template <bool Hull>
void BM_MatchingProjection(benchmark::State& state) {
  const SignalSet matchings = SignalSet::matchings(static_cast<int>(state.range(0)));
  const ConvexBody body = make_relaxation(matchings, Hull ? "hull" : "hypersimplex");
  std::mt19937_64 rng(3);
  std::normal_distribution<double> noise(0.0, 0.3);
  Vector y = sample_signal(matchings, 7);
  for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += noise(rng);
  for (auto _ : state) benchmark::DoNotOptimize(project(body, y));
}

}  // namespace

BENCHMARK(BM_ComplexitySerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ComplexityParallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RiskSerial)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RiskParallel)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_TEMPLATE(BM_MatchingProjection, true)->Arg(4)->Arg(6)->Arg(8);
BENCHMARK_TEMPLATE(BM_MatchingProjection, false)->Arg(4)->Arg(6)->Arg(8);

int main(int argc, char** argv) {
  if (const auto threads = thread_limit_from_env()) set_thread_limit(*threads);
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
