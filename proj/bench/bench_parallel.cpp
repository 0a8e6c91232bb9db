// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "tsketch/baselines.hpp"
#include "tsketch/eval.hpp"
#include "tsketch/tensor_sketch.hpp"

namespace ts = tsketch;

namespace {

void BM_TransformSerial(benchmark::State& state) {
  const auto D = static_cast<std::size_t>(state.range(0));
  const auto data = ts::gaussian_dataset(256, 512, 1, true);
  const ts::TensorSketchMap map(ts::SketchConfig{512, D, 3, 1.0, 2});
  for (auto _ : state) benchmark::DoNotOptimize(map.apply_batch_serial(data));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}

void BM_TransformParallel(benchmark::State& state) {
  const auto D = static_cast<std::size_t>(state.range(0));
  const auto data = ts::gaussian_dataset(256, 512, 1, true);
  const ts::TensorSketchMap map(ts::SketchConfig{512, D, 3, 1.0, 2});
  for (auto _ : state) benchmark::DoNotOptimize(map.apply_batch(data));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}

void BM_TrialsSerial(benchmark::State& state) {
  const auto xy = ts::gaussian_dataset(2, 6, 3, true);
  const ts::SketchConfig cfg{6, 16, 2, 0.0, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::run_trials(ts::EstimatorKind::tensor, xy[0], xy[1], cfg,
                                            10000, 4, ts::Execution::serial));
  }
}

void BM_TrialsParallel(benchmark::State& state) {
  const auto xy = ts::gaussian_dataset(2, 6, 3, true);
  const ts::SketchConfig cfg{6, 16, 2, 0.0, 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ts::run_trials(ts::EstimatorKind::tensor, xy[0], xy[1], cfg,
                                            10000, 4, ts::Execution::parallel));
  }
}

void BM_GramSerial(benchmark::State& state) {
  const auto data = ts::gaussian_dataset(200, 16, 5, true);
  const ts::SketchConfig cfg{16, 1024, 2, 0.0, 6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ts::gram_error(data, cfg, ts::EstimatorKind::tensor, ts::Execution::serial));
  }
}

void BM_GramParallel(benchmark::State& state) {
  const auto data = ts::gaussian_dataset(200, 16, 5, true);
  const ts::SketchConfig cfg{16, 1024, 2, 0.0, 6};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ts::gram_error(data, cfg, ts::EstimatorKind::tensor, ts::Execution::parallel));
  }
}

void BM_PairTensor(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xy = ts::gaussian_dataset(2, n, 7, true);
  const ts::TensorSketchMap map(ts::SketchConfig{n, n, 2, 0.0, 8});
  for (auto _ : state) benchmark::DoNotOptimize(ts::estimate_kernel(map, xy[0], xy[1]));
}

void BM_PairAmsProduct(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xy = ts::gaussian_dataset(2, n, 7, true);
  const ts::AmsTensorEstimator est(ts::SketchConfig{n, n, 2, 0.0, 8});
  for (auto _ : state) benchmark::DoNotOptimize(est.estimate(xy[0], xy[1]));
}

}  // namespace

BENCHMARK(BM_TransformSerial)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_TransformParallel)->Arg(256)->Arg(1024)->Arg(4096);
BENCHMARK(BM_TrialsSerial);
BENCHMARK(BM_TrialsParallel);
BENCHMARK(BM_GramSerial);
BENCHMARK(BM_GramParallel);
BENCHMARK(BM_PairTensor)->Arg(256)->Arg(1024);
BENCHMARK(BM_PairAmsProduct)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
