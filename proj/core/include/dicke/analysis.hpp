#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dicke/detection.hpp"
#include "dicke/emitter_state.hpp"
#include "dicke/geometry.hpp"

namespace dicke {

/// Aggregated fidelity statistics of a perturbed-geometry ensemble.
/// Samples whose herald fails (squared norm below the failure threshold)
/// are excluded from the fidelity statistics and counted separately; they
/// contribute zero to the rate mean. mean_fidelity is the per-sample mean,
/// i.e. <target| rho |target> for the sample-averaged ensemble.
struct MonteCarloReport {
    std::uint64_t num_samples = 0;   // contributing samples
    std::uint64_t num_failures = 0;  // heralding failures
    double mean_fidelity = 0.0;
    double fidelity_stddev = 0.0;
    double fidelity_stderr = 0.0;
    double mean_relative_rate = 0.0;
    double quantile_05 = 0.0;
    double quantile_50 = 0.0;
    double quantile_95 = 0.0;
    /// Small-perturbation closed-form estimate (see analytic_fidelity_estimate).
    double analytic_estimate = 1.0;
    std::uint64_t seed = 0;
};

struct WitnessVerdict {
    double fidelity = 0.0;
    double threshold = 2.0 / 3.0;
    bool entangled_certified = false;
};

/// Default genuine-multipartite-entanglement witness bound for the
/// four-qubit symmetric Dicke state with two excitations.
inline constexpr double kDefaultWitnessThreshold = 2.0 / 3.0;

/// Everything one ensemble run needs. `outcomes` must be consistent with
/// `target`: the count of level1 outcomes equals the target's ones count.
struct EnsembleConfig {
    ChainGeometry geometry;
    std::vector<DetectorSpec> detectors;
    std::vector<Level> outcomes;
    PerturbationSpec perturbation;
    DickeTarget target;
    EmissionModel emission;
    std::uint64_t num_samples = 0;
    Engine engine = Engine::sequential;
};

/// Monte Carlo error propagation: draws num_samples perturbed phase
/// matrices, runs the heralding protocol on each and aggregates the
/// fidelity against the target Dicke state. Deterministic for a fixed
/// (config, seed) regardless of num_threads: per-sample streams are
/// derived by seed-splitting and the reduction runs in sample order.
/// num_threads = 0 picks the hardware concurrency.
MonteCarloReport monte_carlo_fidelity(const EnsembleConfig& config, int num_threads = 0);

/// Second-order phase-variance propagation, valid for small perturbations:
/// F ~ 1 - Var_s(mean path phase of basis class s), averaged over the
/// perturbation distributions in closed form. Exact-phase (fiber) rows and
/// emitter-local phase shifts drop out, matching the engine.
double analytic_fidelity_estimate(const ChainGeometry& geometry,
                                  const std::vector<DetectorSpec>& detectors,
                                  const std::vector<Level>& outcomes,
                                  const PerturbationSpec& perturbation);

/// Strict threshold comparison; fidelity must lie in [0, 1].
WitnessVerdict witness_check(double fidelity, double threshold = kDefaultWitnessThreshold);

enum class ScanAxis { lateral_sigma, angular_halfwidth, spacing_error, wavelength };

/// One scanned point: the report on success, otherwise the error text.
struct ScanPoint {
    double value = 0.0;
    std::optional<MonteCarloReport> report;
    std::string error;
};

/// Runs one Monte Carlo ensemble per value along the chosen axis.
/// lateral_sigma / angular_halfwidth vary the perturbation widths;
/// spacing_error / wavelength shift the physical geometry while the
/// detectors stay fixed at the base configuration (a systematic
/// miscalibration). The first point runs with the base seed (so a one-value
/// scan reproduces a plain ensemble run exactly); subsequent points run with
/// per-point derived seeds. Per-point failures are recorded without aborting
/// the remaining points. `values` must be nonempty and strictly monotone.
std::vector<ScanPoint> scan_parameter(ScanAxis axis, const std::vector<double>& values,
                                      const EnsembleConfig& base, int num_threads = 0);

}  // namespace dicke
