// Amplitude-engine microbenchmarks: sequential detection-operator product
// vs block-permanent evaluation vs the factorial path sum, as the emitter
// count grows.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "dicke/detection.hpp"
#include "dicke/geometry.hpp"
#include "dicke/permanent.hpp"

namespace {

using namespace dicke;

PhaseMatrix random_phases(int n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(0.0, 6.283185307179586);
    PhaseMatrix phases(n, n);
    for (int det = 0; det < n; ++det) {
        for (int j = 0; j < n; ++j) phases.at(det, j) = dist(gen);
    }
    return phases;
}

std::vector<Level> half_ones(int n) {
    std::vector<Level> outcomes(static_cast<std::size_t>(n), Level::level0);
    for (int i = 0; i < n / 2; ++i) outcomes[static_cast<std::size_t>(i)] = Level::level1;
    return outcomes;
}

void BM_SequentialEngine(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PhaseMatrix phases = random_phases(n, 7);
    const std::vector<Level> outcomes = half_ones(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(n, phases, outcomes, EmissionModel(),
                                              Interpretation::atomic_qubits, Engine::sequential));
    }
}
BENCHMARK(BM_SequentialEngine)->DenseRange(2, 8);

void BM_PermanentEngine(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PhaseMatrix phases = random_phases(n, 7);
    const std::vector<Level> outcomes = half_ones(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_protocol(n, phases, outcomes, EmissionModel(),
                                              Interpretation::atomic_qubits, Engine::permanent));
    }
}
BENCHMARK(BM_PermanentEngine)->DenseRange(2, 8);

void BM_PathSumOracle(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PhaseMatrix phases = random_phases(n, 7);
    const std::vector<Level> outcomes = half_ones(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(amplitude_oracle_bruteforce(phases, outcomes));
    }
}
BENCHMARK(BM_PathSumOracle)->DenseRange(2, 8);

void BM_RyserPermanent(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::complex<double>> matrix(static_cast<std::size_t>(k) *
                                             static_cast<std::size_t>(k));
    for (auto& entry : matrix) entry = {dist(gen), dist(gen)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(permanent(matrix, k));
    }
}
BENCHMARK(BM_RyserPermanent)->DenseRange(2, 12);

}  // namespace

BENCHMARK_MAIN();
