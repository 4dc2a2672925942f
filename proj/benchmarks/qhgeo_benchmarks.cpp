#include <benchmark/benchmark.h>

#include "qhgeo/deformations.hpp"
#include "qhgeo/mapping_analysis.hpp"
#include "qhgeo/quasihyperbolic.hpp"

namespace {

using namespace qhgeo;

std::shared_ptr<const DomainSample> disk(double h) {
  ShapeSpec s;
  s.kind = ShapeKind::kDisk;
  s.resolution = h;
  return build_grid_domain(s);
}

// Argument: grid cells per unit length.
double spacing(const benchmark::State& state) { return 1.0 / static_cast<double>(state.range(0)); }

void BM_GridDomain(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(disk(spacing(state)));
}
BENCHMARK(BM_GridDomain)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_EuclideanTree(benchmark::State& state) {
  const auto d = disk(spacing(state));
  const VertexId o = d->deepest_vertex();
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path_tree(d->graph(), o));
  state.counters["vertices"] = static_cast<double>(d->size());
}
BENCHMARK(BM_EuclideanTree)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_QuasihyperbolicTree(benchmark::State& state) {
  const auto k = make_qh_metric(disk(spacing(state)));
  const VertexId o = k->base().deepest_vertex();
  for (auto _ : state) benchmark::DoNotOptimize(shortest_path_tree(k->graph(), o));
  state.counters["vertices"] = static_cast<double>(k->base().size());
}
BENCHMARK(BM_QuasihyperbolicTree)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_BhkDeformation(benchmark::State& state) {
  const auto k = make_qh_metric(disk(spacing(state)));
  const VertexId o = k->base().deepest_vertex();
  for (auto _ : state) benchmark::DoNotOptimize(BhkSpace(k, o, 0.2));
}
BENCHMARK(BM_BhkDeformation)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

// One dense chain-metric row; a fresh space each iteration defeats the row cache.
void BM_SphericalRow(benchmark::State& state) {
  const auto d = disk(spacing(state));
  const std::size_t pole = nearest_boundary_sample(*d, {1.0, 0.0});
  for (auto _ : state) {
    const SphericalSpace s(d, pole);
    benchmark::DoNotOptimize(s.row(0));
  }
  state.counters["vertices"] = static_cast<double>(d->size());
}
BENCHMARK(BM_SphericalRow)->Arg(10)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_PartialLipschitz(benchmark::State& state) {
  const auto k = make_qh_metric(disk(0.02));
  const auto m = MappingPair::from_planar_map(k, k, disk_automorphism({0.5, 0.0}));
  BallSampling sampling;
  sampling.centres = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_partial_lipschitz(m, 0.2, sampling));
}
BENCHMARK(BM_PartialLipschitz)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
