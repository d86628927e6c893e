#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

/// Linear chain of emitters with spacing d: emitter j (1-based) sits at
/// j*d along the chain axis, the coordinate origin on the axis extension.
/// Detectors live in the far field, so only path-difference projections
/// onto detector directions ever enter; the detector distance does not.
struct ChainGeometry {
    int num_emitters = 0;
    double spacing = 0.0;     // meters
    double wavelength = 0.0;  // meters

    double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }

    void validate() const;
};

enum class Polarizer { sigma_plus, sigma_minus };

/// One detector: either an in-plane angle theta measured from the normal
/// of the chain axis (far-field mode), or an exact per-step phase that
/// bypasses geometry entirely (fiber-coupled mode, where path lengths are
/// set by the fibers).
struct DetectorSpec {
    enum class PhaseMode { from_angle, exact_phase };

    double angle = 0.0;              // radians, from_angle mode only
    double exact_phase_value = 0.0;  // radians per emitter step, exact_phase mode only
    Polarizer polarizer = Polarizer::sigma_plus;
    PhaseMode mode = PhaseMode::from_angle;

    static DetectorSpec from_angle(double theta, Polarizer polarizer);
    static DetectorSpec with_exact_phase(double phase, Polarizer polarizer);

    void validate() const;
};

enum class Distribution { gaussian, uniform };

/// Geometric uncertainty model. Widths are standard deviations for
/// gaussian draws and half-widths for uniform draws. The seed is part of
/// the spec so that every sampled configuration is reproducible.
struct PerturbationSpec {
    double lateral_sigma = 0.0;  // meters, transverse emitter jitter
    Distribution lateral_distribution = Distribution::gaussian;
    double axial_sigma = 0.0;  // meters, along-chain emitter jitter
    Distribution axial_distribution = Distribution::gaussian;
    double angular_halfwidth = 0.0;  // radians, detector angle window
    Distribution angular_distribution = Distribution::uniform;
    std::uint64_t rng_seed = 0;

    void validate() const;

    bool is_identity() const {
        return lateral_sigma == 0.0 && axial_sigma == 0.0 && angular_halfwidth == 0.0;
    }
};

/// Dense (num_detectors x num_emitters) matrix of interferometric phases
/// phi_{n,j} = k * (e_n . R_j), radians. Row n belongs to detector n.
class PhaseMatrix {
public:
    PhaseMatrix(int num_detectors, int num_emitters);

    int num_detectors() const { return rows_; }
    int num_emitters() const { return cols_; }

    double& at(int detector, int emitter) {
        return data_[static_cast<std::size_t>(detector) * static_cast<std::size_t>(cols_) +
                     static_cast<std::size_t>(emitter)];
    }
    double at(int detector, int emitter) const {
        return data_[static_cast<std::size_t>(detector) * static_cast<std::size_t>(cols_) +
                     static_cast<std::size_t>(emitter)];
    }

    /// Row n as a flat vector (phi_{n,1} ... phi_{n,N}).
    std::vector<double> row(int detector) const;

    bool operator==(const PhaseMatrix&) const = default;

private:
    int rows_;
    int cols_;
    std::vector<double> data_;
};

/// Phase between photons from adjacent emitters reaching the detector:
/// delta = k d sin(theta). Rejects exact-phase detectors.
double nominal_phase(const ChainGeometry& geometry, const DetectorSpec& detector);

/// Angles theta with k d sin(theta) a multiple of 2*pi: sin(theta) = q*lambda/d
/// for integer q. Returns n distinct solutions ordered by |q| (positive q
/// first), so the least phase-sensitive diffraction orders are used; q = 0
/// appears at most once. Throws GeometryInfeasibleError when fewer than n
/// orders satisfy |q*lambda/d| < 1.
std::vector<double> dicke_detector_angles(const ChainGeometry& geometry, int n_detectors);

/// Unperturbed phase matrix: entry (n, j) = j * k d sin(theta_n), or
/// j * (exact phase) for fiber-coupled detectors.
PhaseMatrix phase_matrix(const ChainGeometry& geometry, const std::vector<DetectorSpec>& detectors);

/// One perturbed realization: emitters displaced transversely (and axially
/// if configured), detector angles drawn inside the angular window, then
/// phases recomputed from the far-field projection k * (e_n . R_j'). A pure
/// function of (rng_seed, sample_index); all widths zero reproduces
/// phase_matrix exactly. Fiber-coupled rows ignore the lateral and angular
/// channels; axial jitter shifts their path lengths by k * dx_j.
PhaseMatrix sample_perturbed_phase_matrix(const ChainGeometry& geometry,
                                          const std::vector<DetectorSpec>& detectors,
                                          const PerturbationSpec& perturbation,
                                          std::uint64_t sample_index);

}  // namespace dicke
