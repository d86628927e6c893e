#include "dicke/spin.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

void require_ground_and_normalized(const EmitterState& state) {
    if (state.excitation_count() != 0) {
        throw InvalidArgumentError("spin expectation requires a fully de-excited register");
    }
    if (!state.is_normalized()) {
        throw InvalidArgumentError("spin expectation requires a normalized state");
    }
}

double spin_z_of_key(const std::string& key) {
    const auto ones = std::count(key.begin(), key.end(), kLevel1Char);
    const auto zeros = static_cast<long>(key.size()) - ones;
    return 0.5 * static_cast<double>(ones - zeros);
}

// Collective ladder operator: flips every occurrence of `from` to `to`,
// one site at a time, summing the shifted terms.
AmplitudeMap apply_ladder(const AmplitudeMap& amps, char from, char to) {
    AmplitudeMap result;
    for (const auto& [key, amp] : amps) {
        for (std::size_t j = 0; j < key.size(); ++j) {
            if (key[j] != from) continue;
            std::string shifted = key;
            shifted[j] = to;
            result[shifted] += amp;
        }
    }
    return result;
}

double map_squared_norm(const AmplitudeMap& amps) {
    double total = 0.0;
    for (const auto& [key, amp] : amps) {
        (void)key;
        total += std::norm(amp);
    }
    return total;
}

}  // namespace

double total_spin_z(const EmitterState& state) {
    require_ground_and_normalized(state);
    double expectation = 0.0;
    for (const auto& [key, amp] : state.amplitudes()) {
        expectation += std::norm(amp) * spin_z_of_key(key);
    }
    return expectation;
}

double total_spin_squared(const EmitterState& state) {
    require_ground_and_normalized(state);
    // Basis strings are S_z eigenstates, so <S_z^2> is diagonal.
    double sz2 = 0.0;
    for (const auto& [key, amp] : state.amplitudes()) {
        const double m = spin_z_of_key(key);
        sz2 += std::norm(amp) * m * m;
    }
    // <S+S-> = |S- psi|^2 and <S-S+> = |S+ psi|^2 since S+^dag = S-.
    const double lower = map_squared_norm(apply_ladder(state.amplitudes(), kLevel1Char, kLevel0Char));
    const double raise = map_squared_norm(apply_ladder(state.amplitudes(), kLevel0Char, kLevel1Char));
    return sz2 + 0.5 * (lower + raise);
}

}  // namespace dicke
