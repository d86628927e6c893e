#include "dicke/geometry.hpp"

#include <cmath>
#include <string>

#include "dicke/rng.hpp"

namespace dicke {

void ChainGeometry::validate() const {
    if (num_emitters < 1) {
        throw InvalidArgumentError("chain needs at least one emitter");
    }
    if (!(spacing > 0.0)) {
        throw InvalidArgumentError("emitter spacing must be positive");
    }
    if (!(wavelength > 0.0)) {
        throw InvalidArgumentError("wavelength must be positive");
    }
}

DetectorSpec DetectorSpec::from_angle(double theta, Polarizer polarizer) {
    DetectorSpec spec;
    spec.angle = theta;
    spec.polarizer = polarizer;
    spec.mode = PhaseMode::from_angle;
    spec.validate();
    return spec;
}

DetectorSpec DetectorSpec::with_exact_phase(double phase, Polarizer polarizer) {
    DetectorSpec spec;
    spec.exact_phase_value = phase;
    spec.polarizer = polarizer;
    spec.mode = PhaseMode::exact_phase;
    return spec;
}

void DetectorSpec::validate() const {
    if (mode == PhaseMode::from_angle && !(std::abs(angle) < std::numbers::pi / 2.0)) {
        throw InvalidArgumentError("detector angle " + std::to_string(angle) +
                                   " rad outside (-pi/2, pi/2)");
    }
}

void PerturbationSpec::validate() const {
    if (lateral_sigma < 0.0 || axial_sigma < 0.0 || angular_halfwidth < 0.0) {
        throw InvalidArgumentError("perturbation widths must be nonnegative");
    }
}

PhaseMatrix::PhaseMatrix(int num_detectors, int num_emitters)
    : rows_(num_detectors),
      cols_(num_emitters),
      data_(static_cast<std::size_t>(num_detectors) * static_cast<std::size_t>(num_emitters), 0.0) {
    if (num_detectors < 1 || num_emitters < 1) {
        throw InvalidArgumentError("phase matrix dimensions must be positive");
    }
}

std::vector<double> PhaseMatrix::row(int detector) const {
    std::vector<double> values(static_cast<std::size_t>(cols_));
    for (int j = 0; j < cols_; ++j) values[static_cast<std::size_t>(j)] = at(detector, j);
    return values;
}

double nominal_phase(const ChainGeometry& geometry, const DetectorSpec& detector) {
    geometry.validate();
    if (detector.mode != DetectorSpec::PhaseMode::from_angle) {
        throw InvalidArgumentError("nominal_phase requires a from_angle detector");
    }
    return geometry.wavenumber() * geometry.spacing * std::sin(detector.angle);
}

std::vector<double> dicke_detector_angles(const ChainGeometry& geometry, int n_detectors) {
    geometry.validate();
    if (n_detectors < 1) {
        throw InvalidArgumentError("detector count must be positive");
    }
    const double ratio = geometry.wavelength / geometry.spacing;  // sin step per order
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(n_detectors));
    // Orders 0, +1, -1, +2, -2, ...: small |q| keeps d(delta)/d(theta) low.
    for (int magnitude = 0; static_cast<int>(angles.size()) < n_detectors; ++magnitude) {
        const double sine = static_cast<double>(magnitude) * ratio;
        if (sine >= 1.0) break;
        angles.push_back(std::asin(sine));
        if (magnitude > 0 && static_cast<int>(angles.size()) < n_detectors) {
            angles.push_back(std::asin(-sine));
        }
    }
    if (static_cast<int>(angles.size()) < n_detectors) {
        throw GeometryInfeasibleError(
            "only " + std::to_string(angles.size()) + " diffraction orders satisfy |q lambda/d| < 1; " +
            std::to_string(n_detectors) + " detectors requested (spacing too small for wavelength)");
    }
    return angles;
}

PhaseMatrix phase_matrix(const ChainGeometry& geometry, const std::vector<DetectorSpec>& detectors) {
    geometry.validate();
    if (detectors.empty()) {
        throw InvalidArgumentError("detector list is empty");
    }
    const double k = geometry.wavenumber();
    PhaseMatrix phases(static_cast<int>(detectors.size()), geometry.num_emitters);
    for (int n = 0; n < phases.num_detectors(); ++n) {
        const DetectorSpec& det = detectors[static_cast<std::size_t>(n)];
        det.validate();
        for (int j = 0; j < geometry.num_emitters; ++j) {
            const double position = static_cast<double>(j + 1);  // emitter index, 1-based
            if (det.mode == DetectorSpec::PhaseMode::from_angle) {
                // Same expression shape as the perturbed path so that the
                // zero-width perturbation reproduces these entries exactly.
                phases.at(n, j) = k * (std::sin(det.angle) * (position * geometry.spacing));
            } else {
                phases.at(n, j) = position * det.exact_phase_value;
            }
        }
    }
    return phases;
}

PhaseMatrix sample_perturbed_phase_matrix(const ChainGeometry& geometry,
                                          const std::vector<DetectorSpec>& detectors,
                                          const PerturbationSpec& perturbation,
                                          std::uint64_t sample_index) {
    geometry.validate();
    perturbation.validate();
    if (detectors.empty()) {
        throw InvalidArgumentError("detector list is empty");
    }

    const int num_emitters = geometry.num_emitters;
    const int num_detectors = static_cast<int>(detectors.size());
    SampleRng rng(perturbation.rng_seed, sample_index);

    auto draw = [&rng](Distribution dist, double width) {
        return dist == Distribution::gaussian ? width * rng.normal()
                                              : width * rng.symmetric_uniform();
    };

    // Fixed draw order keeps the stream layout independent of which widths
    // are zero, so width -> 0 converges to the nominal matrix exactly.
    std::vector<double> lateral(static_cast<std::size_t>(num_emitters));
    std::vector<double> axial(static_cast<std::size_t>(num_emitters));
    for (auto& dy : lateral) dy = draw(perturbation.lateral_distribution, perturbation.lateral_sigma);
    for (auto& dx : axial) dx = draw(perturbation.axial_distribution, perturbation.axial_sigma);
    std::vector<double> angle_offsets(static_cast<std::size_t>(num_detectors));
    for (auto& da : angle_offsets) {
        da = draw(perturbation.angular_distribution, perturbation.angular_halfwidth);
    }

    const double k = geometry.wavenumber();
    PhaseMatrix phases(num_detectors, num_emitters);
    for (int n = 0; n < num_detectors; ++n) {
        const DetectorSpec& det = detectors[static_cast<std::size_t>(n)];
        det.validate();
        if (det.mode == DetectorSpec::PhaseMode::exact_phase) {
            // Fiber-coupled: path phases are set by the fibers, so the
            // angular window and lateral jitter do not apply. Axial motion
            // changes the emitter-fiber distance directly.
            for (int j = 0; j < num_emitters; ++j) {
                phases.at(n, j) = static_cast<double>(j + 1) * det.exact_phase_value +
                                  k * axial[static_cast<std::size_t>(j)];
            }
            continue;
        }
        const double theta = det.angle + angle_offsets[static_cast<std::size_t>(n)];
        const double sin_theta = std::sin(theta);
        const double cos_theta = std::cos(theta);
        for (int j = 0; j < num_emitters; ++j) {
            const double along = static_cast<double>(j + 1) * geometry.spacing +
                                 axial[static_cast<std::size_t>(j)];
            const double across = lateral[static_cast<std::size_t>(j)];
            phases.at(n, j) = k * (sin_theta * along) + k * (cos_theta * across);
        }
    }
    return phases;
}

}  // namespace dicke
