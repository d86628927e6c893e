#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dicke/analysis.hpp"
#include "dicke/detection.hpp"
#include "dicke/emitter_state.hpp"
#include "dicke/geometry.hpp"

namespace dicke::cli {

/// How the detector list is specified:
///  - dicke_angles: resolve N angles with phases at multiples of 2*pi;
///  - angles: explicit far-field angles, radians;
///  - exact_phases: fiber-coupled per-step phases, radians.
enum class DetectorMode { dicke_angles, angles, exact_phases };

struct ScanSpec {
    ScanAxis axis = ScanAxis::lateral_sigma;
    std::vector<double> values;
};

/// Parsed and validated run configuration. The JSON schema is strict:
/// unknown keys anywhere are rejected. See README for the field reference.
struct RunConfig {
    ChainGeometry geometry;
    DetectorMode detector_mode = DetectorMode::dicke_angles;
    std::vector<double> detector_values;  // angles or exact phases; empty for dicke_angles
    std::vector<Polarizer> polarizers;    // one per detector; fixes the heralded levels
    EmissionModel emission;
    PerturbationSpec perturbation;
    std::optional<DickeTarget> target;
    std::uint64_t num_samples = 10000;
    std::uint64_t seed = 0;
    Interpretation interpretation = Interpretation::atomic_qubits;
    Engine engine = Engine::sequential;
    double witness_threshold = kDefaultWitnessThreshold;
    std::optional<ScanSpec> scan;
    std::string output_dir = ".";

    /// Materializes the detector list (runs dicke_detector_angles when
    /// requested). Throws GeometryInfeasibleError if no arrangement exists.
    std::vector<DetectorSpec> resolve_detectors() const;

    /// Ground levels heralded by the polarizers, in detector order.
    std::vector<Level> outcome_levels() const;

    /// Canonical effective configuration: every knob that influences the
    /// numeric payload, with overrides applied and defaults made explicit.
    /// Output location is deliberately excluded, so re-running the echo
    /// reproduces the numbers byte-for-byte anywhere. Parsing the echo
    /// yields this same config back (fixpoint).
    nlohmann::json echo() const;
};

/// Throws InvalidArgumentError with a field-qualified message on any
/// schema violation (unknown key, wrong type, bad value).
RunConfig parse_run_config(const nlohmann::json& root);

/// Reads and parses a config file; file access problems map to
/// InvalidArgumentError as well (a missing config is a config error).
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace dicke::cli
