// Parallel kernels against their serial references.
#include <benchmark/benchmark.h>

#include "cdmm/delay_stats.hpp"
#include "cdmm/dense_matrix.hpp"
#include "cdmm/sim_engine.hpp"

namespace {

cdmm::DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    cdmm::Rng rng(seed);
    cdmm::DenseMatrix m(rows, cols);
    for (auto& v : m.data()) v = rng.uniform();
    return m;
}

void BM_MultiplyTransposed(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_matrix(n, n, 1);
    const auto b = random_matrix(n, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(cdmm::multiply_transposed(a, b));
}

void BM_MultiplyTransposedSerial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_matrix(n, n, 1);
    const auto b = random_matrix(n, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(cdmm::multiply_transposed_serial(a, b));
}

const cdmm::CodeChoice kProduct{cdmm::Scheme::Product, 3};
const cdmm::CodeChoice kMds{cdmm::Scheme::MDS, 3};

void BM_RunExperiment(benchmark::State& state) {
    const auto& choice = state.range(1) ? kProduct : kMds;
    for (auto _ : state)
        benchmark::DoNotOptimize(cdmm::run_experiment(choice, 16, 1.0, 0.95, static_cast<int>(state.range(0)), 7));
}

void BM_RunExperimentSerial(benchmark::State& state) {
    const auto& choice = state.range(1) ? kProduct : kMds;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            cdmm::run_experiment_serial(choice, 16, 1.0, 0.95, static_cast<int>(state.range(0)), 7));
}

}  // namespace

BENCHMARK(BM_MultiplyTransposed)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MultiplyTransposedSerial)->Arg(64)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunExperiment)->Args({100000, 0})->Args({100000, 1})->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_RunExperimentSerial)->Args({100000, 0})->Args({100000, 1})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
