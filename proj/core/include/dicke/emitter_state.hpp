#pragma once

#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "dicke/errors.hpp"

namespace dicke {

using Amplitude = std::complex<double>;

/// Sparse amplitude vector keyed by basis strings. Keys are length-N words
/// over the alphabet {e, 0, 1}: emitter j (1-based) lives at string index
/// j-1. std::map keeps iteration order lexicographic, which makes every
/// downstream reduction and serialization deterministic.
using AmplitudeMap = std::map<std::string, Amplitude, std::less<>>;

/// Largest register the sequential engine accepts. Supports stay sparse
/// (at most N!/(n0! n1!) strings), so the cap is a sanity bound rather
/// than a memory limit.
inline constexpr int kMaxEmitters = 12;

/// Tolerance on |1 - sum |amp|^2| for the `normalized` flag.
inline constexpr double kNormTolerance = 1e-12;

inline constexpr char kExcitedChar = 'e';
inline constexpr char kLevel0Char = '0';
inline constexpr char kLevel1Char = '1';

/// Ground level heralded by a photodetection. A sigma+ photon projects the
/// emitting atom to level 0, a sigma- photon to level 1.
enum class Level { level0, level1 };

inline char level_char(Level level) {
    return level == Level::level0 ? kLevel0Char : kLevel1Char;
}

/// N-emitter register with sparse complex amplitudes.
///
/// Invariants enforced at construction:
///  - every key has length num_emitters and characters in {e, 0, 1};
///  - all keys carry the same count of 'e' characters (a detection removes
///    exactly one excitation, so mixed excitation counts never coexist).
///
/// Values are immutable after construction; all operations below are pure.
class EmitterState {
public:
    EmitterState(int num_emitters, AmplitudeMap amplitudes);

    int num_emitters() const { return num_emitters_; }
    const AmplitudeMap& amplitudes() const { return amplitudes_; }
    std::size_t support_size() const { return amplitudes_.size(); }

    /// Count of 'e' characters shared by every key; -1 for the empty state.
    int excitation_count() const { return excitation_count_; }

    double squared_norm() const;
    bool is_normalized(double tol = kNormTolerance) const;

    /// Amplitude of one basis string, zero if outside the support.
    Amplitude amplitude(std::string_view key) const;

private:
    int num_emitters_;
    int excitation_count_;
    AmplitudeMap amplitudes_;
};

/// Specification of a symmetric Dicke state |N/2, m>. The projection is
/// stored as 2m so half-integral m stays exact.
struct DickeTarget {
    int num_qubits = 0;
    int spin_projection_times_two = 0;

    /// Number of '1' characters in every expansion term: N/2 + m.
    int ones_count() const { return (num_qubits + spin_projection_times_two) / 2; }

    /// Throws InvalidArgumentError on parity or range violation.
    void validate() const;
};

/// Branching amplitudes of the two decay channels of the Lambda system:
/// c0 for |e> -> |0> with a sigma+ photon, c1 for |e> -> |1> with sigma-.
class EmissionModel {
public:
    /// Balanced branching, c0 = c1 = 1/sqrt(2).
    EmissionModel();
    EmissionModel(Amplitude c0, Amplitude c1);

    Amplitude c0() const { return c0_; }
    Amplitude c1() const { return c1_; }
    Amplitude branch_amplitude(Level level) const { return level == Level::level0 ? c0_ : c1_; }

private:
    Amplitude c0_;
    Amplitude c1_;
};

/// |e,e,...,e>_n, the register after the collective pi-pulse.
EmitterState make_initial_state(int n);

/// Normalized symmetric Dicke state: uniform positive amplitudes on all
/// distinct permutations of the (N/2+m)-ones string.
EmitterState make_dicke_state(const DickeTarget& target);

struct NormalizationResult {
    EmitterState state;
    double squared_norm;  // pre-normalization, for rate accounting
};

/// Rescales to unit norm. Throws ZeroNormError for the zero state.
NormalizationResult normalize(const EmitterState& state);

/// <a|b> for registers of equal size (no normalization requirement).
Amplitude overlap(const EmitterState& a, const EmitterState& b);

/// |<a|b>|^2, clamped to [0, 1]. Both inputs must be normalized.
double fidelity(const EmitterState& a, const EmitterState& b);

}  // namespace dicke
