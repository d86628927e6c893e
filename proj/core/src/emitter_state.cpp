#include "dicke/emitter_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace dicke {

namespace {

int count_excitations(std::string_view key) {
    return static_cast<int>(std::count(key.begin(), key.end(), kExcitedChar));
}

bool valid_char(char c) {
    return c == kExcitedChar || c == kLevel0Char || c == kLevel1Char;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 0; i < k; ++i) {
        result = result * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return result;
}

}  // namespace

EmitterState::EmitterState(int num_emitters, AmplitudeMap amplitudes)
    : num_emitters_(num_emitters), excitation_count_(-1), amplitudes_(std::move(amplitudes)) {
    if (num_emitters_ < 1 || num_emitters_ > kMaxEmitters) {
        throw InvalidArgumentError("emitter count " + std::to_string(num_emitters_) +
                                   " outside [1, " + std::to_string(kMaxEmitters) + "]");
    }
    for (const auto& [key, amp] : amplitudes_) {
        if (static_cast<int>(key.size()) != num_emitters_) {
            throw InvalidArgumentError("basis string '" + key + "' does not have length " +
                                       std::to_string(num_emitters_));
        }
        if (!std::all_of(key.begin(), key.end(), valid_char)) {
            throw InvalidArgumentError("basis string '" + key + "' has characters outside {e,0,1}");
        }
        const int excitations = count_excitations(key);
        if (excitation_count_ < 0) {
            excitation_count_ = excitations;
        } else if (excitations != excitation_count_) {
            throw InvalidArgumentError("mixed excitation counts in one state: '" + key + "'");
        }
        (void)amp;
    }
}

double EmitterState::squared_norm() const {
    double total = 0.0;
    for (const auto& [key, amp] : amplitudes_) {
        (void)key;
        total += std::norm(amp);
    }
    return total;
}

bool EmitterState::is_normalized(double tol) const {
    return std::abs(squared_norm() - 1.0) <= tol;
}

Amplitude EmitterState::amplitude(std::string_view key) const {
    const auto it = amplitudes_.find(key);
    return it == amplitudes_.end() ? Amplitude{0.0, 0.0} : it->second;
}

void DickeTarget::validate() const {
    if (num_qubits < 1 || num_qubits > kMaxEmitters) {
        throw InvalidArgumentError("Dicke target size " + std::to_string(num_qubits) +
                                   " outside [1, " + std::to_string(kMaxEmitters) + "]");
    }
    if (std::abs(spin_projection_times_two) > num_qubits) {
        throw InvalidArgumentError("spin projection 2m = " +
                                   std::to_string(spin_projection_times_two) +
                                   " exceeds N = " + std::to_string(num_qubits));
    }
    if ((spin_projection_times_two + num_qubits) % 2 != 0) {
        throw InvalidArgumentError("spin projection 2m = " +
                                   std::to_string(spin_projection_times_two) +
                                   " has wrong parity for N = " + std::to_string(num_qubits));
    }
}

EmissionModel::EmissionModel() : c0_(1.0 / std::sqrt(2.0), 0.0), c1_(1.0 / std::sqrt(2.0), 0.0) {}

EmissionModel::EmissionModel(Amplitude c0, Amplitude c1) : c0_(c0), c1_(c1) {
    const double total = std::norm(c0_) + std::norm(c1_);
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw InvalidArgumentError("branching amplitudes not normalized: |c0|^2 + |c1|^2 = " +
                                   std::to_string(total));
    }
}

EmitterState make_initial_state(int n) {
    if (n < 1 || n > kMaxEmitters) {
        throw InvalidArgumentError("initial state size " + std::to_string(n) + " outside [1, " +
                                   std::to_string(kMaxEmitters) + "]");
    }
    AmplitudeMap amps;
    amps.emplace(std::string(static_cast<std::size_t>(n), kExcitedChar), Amplitude{1.0, 0.0});
    return EmitterState(n, std::move(amps));
}

EmitterState make_dicke_state(const DickeTarget& target) {
    target.validate();
    const int n = target.num_qubits;
    const int ones = target.ones_count();
    const double amp = 1.0 / std::sqrt(binomial(n, ones));

    // Enumerate all n-choose-ones placements of '1' characters.
    AmplitudeMap amps;
    std::string key(static_cast<std::size_t>(n), kLevel0Char);
    std::vector<int> positions(static_cast<std::size_t>(ones));
    std::iota(positions.begin(), positions.end(), 0);
    while (true) {
        std::fill(key.begin(), key.end(), kLevel0Char);
        for (int p : positions) key[static_cast<std::size_t>(p)] = kLevel1Char;
        amps.emplace(key, Amplitude{amp, 0.0});
        // next combination in lexicographic order
        int i = ones - 1;
        while (i >= 0 && positions[static_cast<std::size_t>(i)] == n - ones + i) --i;
        if (i < 0) break;
        ++positions[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < ones; ++j) {
            positions[static_cast<std::size_t>(j)] = positions[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return EmitterState(n, std::move(amps));
}

NormalizationResult normalize(const EmitterState& state) {
    const double norm2 = state.squared_norm();
    if (norm2 <= 0.0) {
        throw ZeroNormError("cannot normalize a zero state (impossible post-selection outcome)");
    }
    const double scale = 1.0 / std::sqrt(norm2);
    AmplitudeMap amps;
    for (const auto& [key, amp] : state.amplitudes()) {
        amps.emplace(key, amp * scale);
    }
    return NormalizationResult{EmitterState(state.num_emitters(), std::move(amps)), norm2};
}

Amplitude overlap(const EmitterState& a, const EmitterState& b) {
    if (a.num_emitters() != b.num_emitters()) {
        throw InvalidArgumentError("overlap of states with different emitter counts");
    }
    Amplitude total{0.0, 0.0};
    // Walk the smaller support.
    const EmitterState& small = a.support_size() <= b.support_size() ? a : b;
    const EmitterState& large = a.support_size() <= b.support_size() ? b : a;
    const bool swapped = &small == &b;
    for (const auto& [key, amp] : small.amplitudes()) {
        const Amplitude other = large.amplitude(key);
        total += swapped ? std::conj(other) * amp : std::conj(amp) * other;
    }
    return total;
}

double fidelity(const EmitterState& a, const EmitterState& b) {
    if (!a.is_normalized() || !b.is_normalized()) {
        throw InvalidArgumentError("fidelity requires normalized states");
    }
    const double value = std::norm(overlap(a, b));
    return std::clamp(value, 0.0, 1.0);
}

}  // namespace dicke
