#include "dicke/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "dicke/rng.hpp"

namespace dicke {

namespace {

void validate_ensemble(const EnsembleConfig& config) {
    config.geometry.validate();
    config.perturbation.validate();
    config.target.validate();
    if (config.num_samples < 1) {
        throw InvalidArgumentError("ensemble needs at least one sample");
    }
    const int n = config.geometry.num_emitters;
    if (static_cast<int>(config.detectors.size()) != n ||
        static_cast<int>(config.outcomes.size()) != n) {
        throw InvalidArgumentError("ensemble needs one detector and one outcome per emitter");
    }
    const auto ones =
        static_cast<int>(std::count(config.outcomes.begin(), config.outcomes.end(), Level::level1));
    if (config.target.num_qubits != n || config.target.ones_count() != ones) {
        throw InvalidArgumentError(
            "target inconsistent with outcomes: level1 count must equal N/2 + m");
    }
}

/// Linear-interpolation quantile of an already sorted vector.
double sorted_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    if (sorted.size() == 1) return sorted.front();
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

int resolve_threads(int num_threads, std::uint64_t num_samples) {
    int threads = num_threads > 0 ? num_threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    const auto cap = static_cast<std::uint64_t>(threads);
    return static_cast<int>(std::min<std::uint64_t>(cap, num_samples));
}

}  // namespace

MonteCarloReport monte_carlo_fidelity(const EnsembleConfig& config, int num_threads) {
    validate_ensemble(config);
    const EmitterState target_state = make_dicke_state(config.target);
    const std::uint64_t total = config.num_samples;

    // Per-sample slots; threads fill disjoint ranges, the reduction below
    // runs in sample order, so the report is scheduling-independent.
    std::vector<double> fidelities(total, 0.0);
    std::vector<double> rates(total, 0.0);
    std::vector<unsigned char> heralded(total, 0);

    auto evaluate_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const PhaseMatrix phases = sample_perturbed_phase_matrix(
                config.geometry, config.detectors, config.perturbation, i);
            try {
                const ProtocolResult result =
                    run_protocol(config.geometry.num_emitters, phases, config.outcomes,
                                 config.emission, Interpretation::atomic_qubits, config.engine);
                fidelities[i] = fidelity(result.final_state, target_state);
                rates[i] = result.relative_rate;
                heralded[i] = 1;
            } catch (const ZeroNormError&) {
                heralded[i] = 0;  // failed herald: excluded from fidelity stats
            }
        }
    };

    const int threads = resolve_threads(num_threads, total);
    if (threads <= 1) {
        evaluate_range(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        const std::uint64_t chunk = (total + static_cast<std::uint64_t>(threads) - 1) /
                                    static_cast<std::uint64_t>(threads);
        for (int t = 0; t < threads; ++t) {
            const std::uint64_t begin = static_cast<std::uint64_t>(t) * chunk;
            const std::uint64_t end = std::min(total, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(evaluate_range, begin, end);
        }
        for (auto& worker : pool) worker.join();
    }

    MonteCarloReport report;
    report.seed = config.perturbation.rng_seed;
    std::vector<double> contributing;
    contributing.reserve(total);
    double rate_sum = 0.0;
    for (std::uint64_t i = 0; i < total; ++i) {
        rate_sum += rates[i];  // failures contribute zero rate
        if (heralded[i]) {
            contributing.push_back(fidelities[i]);
        } else {
            ++report.num_failures;
        }
    }
    report.num_samples = contributing.size();
    report.mean_relative_rate = rate_sum / static_cast<double>(total);

    if (!contributing.empty()) {
        const auto n = static_cast<double>(contributing.size());
        const double mean =
            std::accumulate(contributing.begin(), contributing.end(), 0.0) / n;
        double variance = 0.0;
        for (double f : contributing) variance += (f - mean) * (f - mean);
        variance = contributing.size() > 1 ? variance / (n - 1.0) : 0.0;
        report.mean_fidelity = mean;
        report.fidelity_stddev = std::sqrt(variance);
        report.fidelity_stderr = report.fidelity_stddev / std::sqrt(n);

        std::sort(contributing.begin(), contributing.end());
        report.quantile_05 = sorted_quantile(contributing, 0.05);
        report.quantile_50 = sorted_quantile(contributing, 0.50);
        report.quantile_95 = sorted_quantile(contributing, 0.95);
    }
    report.analytic_estimate = analytic_fidelity_estimate(config.geometry, config.detectors,
                                                          config.outcomes, config.perturbation);
    return report;
}

double analytic_fidelity_estimate(const ChainGeometry& geometry,
                                  const std::vector<DetectorSpec>& detectors,
                                  const std::vector<Level>& outcomes,
                                  const PerturbationSpec& perturbation) {
    geometry.validate();
    perturbation.validate();
    const int n = geometry.num_emitters;
    if (static_cast<int>(detectors.size()) != n || static_cast<int>(outcomes.size()) != n) {
        throw InvalidArgumentError("analytic estimate needs one detector and outcome per emitter");
    }

    // First-order phase error of entry (det, j):
    //   eps = k cos(theta) * dy_j  +  k sin(theta) * dx_j  +  k x_j cos(theta) * u_det
    // with independent dy_j, dx_j, u_det. Writing the class-mean phase of
    // basis string s as a linear form in these variables, the infidelity is
    // the between-class variance of that form. Fiber rows have no angle and
    // couple only to dx with a j-independent weight, which cancels in the
    // class means.
    const auto ones = static_cast<int>(std::count(outcomes.begin(), outcomes.end(), Level::level1));
    const int zeros = n - ones;
    if (ones == 0 || zeros == 0) return 1.0;  // single basis class: product state

    const double k = geometry.wavenumber();
    const double var_lat = perturbation.lateral_distribution == Distribution::gaussian
                               ? perturbation.lateral_sigma * perturbation.lateral_sigma
                               : perturbation.lateral_sigma * perturbation.lateral_sigma / 3.0;
    const double var_ax = perturbation.axial_distribution == Distribution::gaussian
                              ? perturbation.axial_sigma * perturbation.axial_sigma
                              : perturbation.axial_sigma * perturbation.axial_sigma / 3.0;
    const double var_ang = perturbation.angular_distribution == Distribution::gaussian
                               ? perturbation.angular_halfwidth * perturbation.angular_halfwidth
                               : perturbation.angular_halfwidth * perturbation.angular_halfwidth / 3.0;

    // Enumerate the basis classes (placements of the '1' outcomes).
    std::vector<std::string> strings;
    {
        std::string key(static_cast<std::size_t>(n), kLevel0Char);
        std::vector<int> positions(static_cast<std::size_t>(ones));
        std::iota(positions.begin(), positions.end(), 0);
        while (true) {
            std::fill(key.begin(), key.end(), kLevel0Char);
            for (int p : positions) key[static_cast<std::size_t>(p)] = kLevel1Char;
            strings.push_back(key);
            int i = ones - 1;
            while (i >= 0 && positions[static_cast<std::size_t>(i)] == n - ones + i) --i;
            if (i < 0) break;
            ++positions[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < ones; ++j) {
                positions[static_cast<std::size_t>(j)] =
                    positions[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }
    const auto num_classes = static_cast<double>(strings.size());

    // Class-mean weights: within class s, detector `det` is matched to
    // emitter j with probability 1/(count of matching outcome) when the
    // levels agree, else 0.
    auto weights_for = [&](const std::string& s) {
        std::vector<double> weights(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        for (int det = 0; det < n; ++det) {
            const char want = level_char(outcomes[static_cast<std::size_t>(det)]);
            const double share = want == kLevel1Char ? 1.0 / static_cast<double>(ones)
                                                     : 1.0 / static_cast<double>(zeros);
            for (int j = 0; j < n; ++j) {
                if (s[static_cast<std::size_t>(j)] == want) {
                    weights[static_cast<std::size_t>(det) * static_cast<std::size_t>(n) +
                            static_cast<std::size_t>(j)] = share;
                }
            }
        }
        return weights;
    };

    std::vector<std::vector<double>> class_weights;
    class_weights.reserve(strings.size());
    std::vector<double> mean_weights(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (const auto& s : strings) {
        class_weights.push_back(weights_for(s));
        for (std::size_t idx = 0; idx < mean_weights.size(); ++idx) {
            mean_weights[idx] += class_weights.back()[idx] / num_classes;
        }
    }

    double between_variance = 0.0;
    for (const auto& weights : class_weights) {
        // Deviation of this class's weights from the grand mean.
        double lat = 0.0;
        double ax = 0.0;
        double ang = 0.0;
        for (int j = 0; j < n; ++j) {
            double lat_coeff = 0.0;
            double ax_coeff = 0.0;
            for (int det = 0; det < n; ++det) {
                const std::size_t idx = static_cast<std::size_t>(det) * static_cast<std::size_t>(n) +
                                        static_cast<std::size_t>(j);
                const double dw = weights[idx] - mean_weights[idx];
                const DetectorSpec& d = detectors[static_cast<std::size_t>(det)];
                if (d.mode == DetectorSpec::PhaseMode::from_angle) {
                    lat_coeff += dw * k * std::cos(d.angle);
                    ax_coeff += dw * k * std::sin(d.angle);
                } else {
                    ax_coeff += dw * k;  // fiber row: direct path-length coupling
                }
            }
            lat += lat_coeff * lat_coeff;
            ax += ax_coeff * ax_coeff;
        }
        for (int det = 0; det < n; ++det) {
            const DetectorSpec& d = detectors[static_cast<std::size_t>(det)];
            if (d.mode != DetectorSpec::PhaseMode::from_angle) continue;
            double coeff = 0.0;
            for (int j = 0; j < n; ++j) {
                const std::size_t idx = static_cast<std::size_t>(det) * static_cast<std::size_t>(n) +
                                        static_cast<std::size_t>(j);
                const double dw = weights[idx] - mean_weights[idx];
                coeff += dw * k * static_cast<double>(j + 1) * geometry.spacing * std::cos(d.angle);
            }
            ang += coeff * coeff;
        }
        between_variance += (lat * var_lat + ax * var_ax + ang * var_ang) / num_classes;
    }
    return std::max(0.0, 1.0 - between_variance);
}

WitnessVerdict witness_check(double fidelity, double threshold) {
    if (fidelity < 0.0 || fidelity > 1.0) {
        throw InvalidArgumentError("fidelity outside [0, 1]");
    }
    if (threshold < 0.0 || threshold > 1.0) {
        throw InvalidArgumentError("witness threshold outside [0, 1]");
    }
    return WitnessVerdict{fidelity, threshold, fidelity > threshold};
}

std::vector<ScanPoint> scan_parameter(ScanAxis axis, const std::vector<double>& values,
                                      const EnsembleConfig& base, int num_threads) {
    if (values.empty()) {
        throw InvalidArgumentError("scan needs at least one value");
    }
    bool increasing = true;
    bool decreasing = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) increasing = false;
        if (!(values[i] < values[i - 1])) decreasing = false;
    }
    if (!increasing && !decreasing) {
        throw InvalidArgumentError("scan values must be strictly monotone");
    }

    std::vector<ScanPoint> points;
    points.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double value = values[i];
        EnsembleConfig config = base;
        // The first point keeps the base seed so a one-value scan reproduces
        // a plain ensemble run bit for bit; later points get split streams.
        config.perturbation.rng_seed =
            i == 0 ? base.perturbation.rng_seed
                   : derive_stream_seed(base.perturbation.rng_seed ^ 0x5343414EULL, i);
        switch (axis) {
            case ScanAxis::lateral_sigma:
                config.perturbation.lateral_sigma = value;
                break;
            case ScanAxis::angular_halfwidth:
                config.perturbation.angular_halfwidth = value;
                break;
            case ScanAxis::spacing_error:
                config.geometry.spacing = base.geometry.spacing + value;
                break;
            case ScanAxis::wavelength:
                config.geometry.wavelength = value;
                break;
        }
        ScanPoint point;
        point.value = value;
        try {
            point.report = monte_carlo_fidelity(config, num_threads);
        } catch (const std::exception& e) {
            point.error = e.what();
        }
        points.push_back(std::move(point));
    }
    return points;
}

}  // namespace dicke
