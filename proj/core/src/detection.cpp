#include "dicke/detection.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "dicke/permanent.hpp"

namespace dicke {

namespace {

constexpr int kOracleMaxEmitters = 8;  // N! guard

double factorial(int n) {
    double result = 1.0;
    for (int i = 2; i <= n; ++i) result *= static_cast<double>(i);
    return result;
}

void check_protocol_shape(int n, const PhaseMatrix& phases, const std::vector<Level>& outcomes) {
    if (phases.num_detectors() != n || static_cast<int>(outcomes.size()) != n ||
        phases.num_emitters() != n) {
        throw InvalidArgumentError("protocol needs N detectors, N outcomes and N emitters");
    }
}

EmitterState state_from_map(int n, AmplitudeMap&& amps) {
    // Drop numerically dead strings.
    for (auto it = amps.begin(); it != amps.end();) {
        if (std::abs(it->second) < kPruneThreshold) {
            it = amps.erase(it);
        } else {
            ++it;
        }
    }
    return EmitterState(n, std::move(amps));
}

}  // namespace

EmitterState apply_detection(const EmitterState& state, const DetectionEvent& event) {
    const int n = state.num_emitters();
    if (static_cast<int>(event.phase_row.size()) != n) {
        throw InvalidArgumentError("phase row length does not match emitter count");
    }
    if (state.excitation_count() == 0) {
        throw ProtocolOverrunError("all excitations already consumed; no photon left to detect");
    }
    const char outcome_char = level_char(event.outcome);

    AmplitudeMap next;
    for (const auto& [key, amp] : state.amplitudes()) {
        for (int j = 0; j < n; ++j) {
            if (key[static_cast<std::size_t>(j)] != kExcitedChar) continue;
            std::string projected = key;
            projected[static_cast<std::size_t>(j)] = outcome_char;
            const double phi = event.phase_row[static_cast<std::size_t>(j)];
            next[std::move(projected)] += amp * std::polar(1.0, phi);
        }
    }
    return state_from_map(n, std::move(next));
}

ProtocolResult run_protocol(int n, const PhaseMatrix& phases, const std::vector<Level>& outcomes,
                            const EmissionModel& emission, Interpretation interpretation,
                            Engine engine) {
    check_protocol_shape(n, phases, outcomes);

    EmitterState unnormalized = [&] {
        if (engine == Engine::permanent) {
            // Evaluate every basis string consistent with the outcome
            // multiset directly.
            const int ones = static_cast<int>(
                std::count(outcomes.begin(), outcomes.end(), Level::level1));
            AmplitudeMap amps;
            std::string key(static_cast<std::size_t>(n), kLevel0Char);
            std::vector<int> positions(static_cast<std::size_t>(ones));
            std::iota(positions.begin(), positions.end(), 0);
            bool more = true;
            while (more) {
                std::fill(key.begin(), key.end(), kLevel0Char);
                for (int p : positions) key[static_cast<std::size_t>(p)] = kLevel1Char;
                amps[key] = amplitude_via_permanents(phases, outcomes, key);
                more = false;
                for (int i = ones - 1; i >= 0; --i) {
                    if (positions[static_cast<std::size_t>(i)] < n - ones + i) {
                        ++positions[static_cast<std::size_t>(i)];
                        for (int j = i + 1; j < ones; ++j) {
                            positions[static_cast<std::size_t>(j)] =
                                positions[static_cast<std::size_t>(j - 1)] + 1;
                        }
                        more = true;
                        break;
                    }
                }
                if (ones == 0) break;  // single all-zeros string
            }
            return state_from_map(n, std::move(amps));
        }
        EmitterState state = make_initial_state(n);
        for (int i = 0; i < n; ++i) {
            state = apply_detection(state, DetectionEvent{i + 1, phases.row(i),
                                                          outcomes[static_cast<std::size_t>(i)]});
        }
        return state;
    }();

    const double squared_norm = unnormalized.squared_norm();
    if (squared_norm < kHeraldFailureThreshold) {
        throw ZeroNormError("outcome pattern interferes destructively at this geometry");
    }

    double branching = 1.0;
    for (Level level : outcomes) branching *= std::norm(emission.branch_amplitude(level));
    const double rate = squared_norm * branching / factorial(n);

    return ProtocolResult{normalize(unnormalized).state, squared_norm, rate, interpretation};
}

EmitterState amplitude_oracle_bruteforce(const PhaseMatrix& phases,
                                         const std::vector<Level>& outcomes) {
    const int n = phases.num_detectors();
    check_protocol_shape(n, phases, outcomes);
    if (n > kOracleMaxEmitters) {
        throw InvalidArgumentError("bruteforce oracle guarded to N <= " +
                                   std::to_string(kOracleMaxEmitters));
    }

    std::vector<int> assignment(static_cast<std::size_t>(n));
    std::iota(assignment.begin(), assignment.end(), 0);

    AmplitudeMap amps;
    std::string key(static_cast<std::size_t>(n), kLevel0Char);
    do {
        double phase = 0.0;
        for (int det = 0; det < n; ++det) {
            const int emitter = assignment[static_cast<std::size_t>(det)];
            phase += phases.at(det, emitter);
            key[static_cast<std::size_t>(emitter)] =
                level_char(outcomes[static_cast<std::size_t>(det)]);
        }
        amps[key] += std::polar(1.0, phase);
    } while (std::next_permutation(assignment.begin(), assignment.end()));

    // No pruning here: the oracle reports the raw path sum.
    return EmitterState(n, std::move(amps));
}

Amplitude amplitude_via_permanents(const PhaseMatrix& phases, const std::vector<Level>& outcomes,
                                   std::string_view basis_string) {
    const int n = phases.num_detectors();
    check_protocol_shape(n, phases, outcomes);
    if (static_cast<int>(basis_string.size()) != n) {
        throw InvalidArgumentError("basis string length does not match emitter count");
    }

    std::vector<int> det0;
    std::vector<int> det1;
    for (int det = 0; det < n; ++det) {
        (outcomes[static_cast<std::size_t>(det)] == Level::level0 ? det0 : det1).push_back(det);
    }
    std::vector<int> pos0;
    std::vector<int> pos1;
    for (int j = 0; j < n; ++j) {
        const char c = basis_string[static_cast<std::size_t>(j)];
        if (c == kLevel0Char) {
            pos0.push_back(j);
        } else if (c == kLevel1Char) {
            pos1.push_back(j);
        } else {
            return {0.0, 0.0};  // residual excitation: not a final string
        }
    }
    if (det0.size() != pos0.size() || det1.size() != pos1.size()) {
        return {0.0, 0.0};  // inconsistent with the outcome multiset
    }

    auto block_permanent = [&phases](const std::vector<int>& dets, const std::vector<int>& cols) {
        const int k = static_cast<int>(dets.size());
        std::vector<std::complex<double>> block(static_cast<std::size_t>(k) *
                                                static_cast<std::size_t>(k));
        for (int r = 0; r < k; ++r) {
            for (int c = 0; c < k; ++c) {
                block[static_cast<std::size_t>(r) * static_cast<std::size_t>(k) +
                      static_cast<std::size_t>(c)] =
                    std::polar(1.0, phases.at(dets[static_cast<std::size_t>(r)],
                                              cols[static_cast<std::size_t>(c)]));
            }
        }
        return permanent(block, k);
    };

    return block_permanent(det0, pos0) * block_permanent(det1, pos1);
}

}  // namespace dicke
