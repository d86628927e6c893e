// Monte Carlo throughput: cost of one perturbed sample (draw + protocol +
// fidelity) and of whole ensembles at different thread counts.

#include <benchmark/benchmark.h>

#include "dicke/analysis.hpp"
#include "dicke/geometry.hpp"

namespace {

using namespace dicke;

EnsembleConfig reference_config(std::uint64_t samples) {
    EnsembleConfig config;
    config.geometry = ChainGeometry{4, 5e-6, 5e-7};
    const auto angles = dicke_detector_angles(config.geometry, 4);
    for (int i = 0; i < 4; ++i) {
        config.detectors.push_back(DetectorSpec::from_angle(
            angles[static_cast<std::size_t>(i)],
            i < 2 ? Polarizer::sigma_minus : Polarizer::sigma_plus));
        config.outcomes.push_back(i < 2 ? Level::level1 : Level::level0);
    }
    config.perturbation.lateral_sigma = 5e-9;
    config.perturbation.angular_halfwidth = 0.005235987755982988;
    config.perturbation.rng_seed = 1;
    config.target = DickeTarget{4, 0};
    config.num_samples = samples;
    return config;
}

void BM_PerturbedSample(benchmark::State& state) {
    const EnsembleConfig config = reference_config(1);
    const EmitterState target = make_dicke_state(config.target);
    std::uint64_t index = 0;
    for (auto _ : state) {
        const PhaseMatrix phases = sample_perturbed_phase_matrix(
            config.geometry, config.detectors, config.perturbation, index++);
        const ProtocolResult result =
            run_protocol(config.geometry.num_emitters, phases, config.outcomes);
        benchmark::DoNotOptimize(fidelity(result.final_state, target));
    }
}
BENCHMARK(BM_PerturbedSample);

void BM_Ensemble(benchmark::State& state) {
    const EnsembleConfig config = reference_config(10000);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monte_carlo_fidelity(config, threads));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(config.num_samples));
}
BENCHMARK(BM_Ensemble)->Arg(1)->Arg(2)->Arg(4)->Arg(0);

}  // namespace

BENCHMARK_MAIN();
