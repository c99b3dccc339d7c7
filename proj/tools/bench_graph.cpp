#include <benchmark/benchmark.h>

#include "sgt/graph.hpp"

namespace {

sgt::FeatureDataset bench_dataset(int n_per_class) {
  return sgt::normalize_columns(
      sgt::make_blobs(3, n_per_class, 24, 8.0, 1.0, 42));
}

void BM_SparseGraphSerial(benchmark::State& state) {
  const auto ds = bench_dataset(static_cast<int>(state.range(0)));
  sgt::LassoConfig cfg;
  for (auto _ : state) {
    auto g = sgt::build_sparse_graph_serial(ds, cfg);
    benchmark::DoNotOptimize(g.weights.data());
  }
  state.SetComplexityN(ds.size());
}

void BM_SparseGraphParallel(benchmark::State& state) {
  const auto ds = bench_dataset(static_cast<int>(state.range(0)));
  sgt::LassoConfig cfg;
  for (auto _ : state) {
    auto g = sgt::build_sparse_graph(ds, cfg);
    benchmark::DoNotOptimize(g.weights.data());
  }
  state.SetComplexityN(ds.size());
}

void BM_KnnHeatGraph(benchmark::State& state) {
  const auto ds = bench_dataset(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto g = sgt::build_knn_heat_graph(ds, 7, 0.5);
    benchmark::DoNotOptimize(g.weights.data());
  }
}

}  // namespace

BENCHMARK(BM_SparseGraphSerial)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SparseGraphParallel)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnHeatGraph)->Arg(20)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
