#include <benchmark/benchmark.h>

#include <utility>

#include "reslab/polygon.hpp"
#include "reslab/rootfind.hpp"
#include "reslab/secular.hpp"

using namespace reslab;

namespace {

PotentialConfig config_for(std::size_t n) {
  std::vector<Pole> d;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i);
    d.push_back({1.7 * t + 0.3 * static_cast<double>(i % 2), 1.0, 0.4 + 0.15 * t});
  }
  return PotentialConfig::validate(1e-6, std::move(d));
}

}  // namespace

static void BM_ClearedDet(benchmark::State& state) {
  const auto c = config_for(static_cast<std::size_t>(state.range(0)));
  cplx z(1.0, -1e-6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cleared_det(c, z));
    z += cplx(1e-9, 0.0);
  }
}
BENCHMARK(BM_ClearedDet)->DenseRange(2, 8, 2);

static void BM_ExpandTerms(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_terms(n));
}
BENCHMARK(BM_ExpandTerms)->DenseRange(2, 8, 1)->Unit(benchmark::kMicrosecond);

static void BM_Polygon(benchmark::State& state) {
  const auto c = config_for(static_cast<std::size_t>(state.range(0)));
  const auto pts = exponent_points(expand_terms(c), c);
  for (auto _ : state) benchmark::DoNotOptimize(build_polygon(pts));
}
BENCHMARK(BM_Polygon)->DenseRange(2, 8, 2);

static void BM_WindingDefaultWindow(benchmark::State& state) {
  const auto c = config_for(static_cast<std::size_t>(state.range(0)));
  const Window w = default_window(c.h());
  for (auto _ : state) benchmark::DoNotOptimize(winding_number(c, w).winding);
}
BENCHMARK(BM_WindingDefaultWindow)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_FindResonances(benchmark::State& state) {
  const auto c = config_for(3);
  SearchOptions opts;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(find_resonances(c, default_window(c.h()), opts).roots.size());
}
BENCHMARK(BM_FindResonances)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
