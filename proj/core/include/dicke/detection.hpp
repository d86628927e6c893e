#pragma once

#include <string_view>
#include <vector>

#include "dicke/emitter_state.hpp"
#include "dicke/geometry.hpp"

namespace dicke {

/// Amplitudes below this magnitude are dropped after each operator
/// application; below double-precision meaningfulness for unit-phasor sums.
inline constexpr double kPruneThreshold = 1e-15;

/// Squared norms below this are treated as a failed herald.
inline constexpr double kHeraldFailureThreshold = 1e-15;

/// Polarizer-to-ground-level mapping of the Lambda system: a sigma+ photon
/// heralds |0>, a sigma- photon heralds |1>.
inline Level to_level(Polarizer polarizer) {
    return polarizer == Polarizer::sigma_plus ? Level::level0 : Level::level1;
}

/// Registration of the nth photon: which detector fired, its phase row
/// phi_{n,j} (j = 1..N), and the ground level heralded by its polarizer.
struct DetectionEvent {
    int detector_index = 0;  // 1-based n, informational
    std::vector<double> phase_row;
    Level outcome = Level::level0;
};

/// Whether result basis strings label atomic ground levels or the
/// polarizations of the photons in the N spatial modes. Pure labeling:
/// the amplitude map is identical either way.
enum class Interpretation { atomic_qubits, photonic_polarization_qubits };

/// sequential: apply the N detection operators one at a time,
///             O(support * N) per step.
/// permanent:  evaluate each final basis string directly as a product of
///             two matrix permanents (the permutation sum factorizes over
///             the sigma+/sigma- detector classes).
enum class Engine { sequential, permanent };

struct ProtocolResult {
    EmitterState final_state;  // normalized
    double squared_norm;       // of the unnormalized final state
    double relative_rate;      // squared_norm * prod_n |c_{x_n}|^2 / N!
    Interpretation interpretation;
};

/// Applies the (unnormalized) detection operator
///   D_n = sum_j exp(i phi_{n,j}) |x_n>_j <e|
/// to every term of the register: emitter j drops from 'e' to the outcome
/// level with phase weight exp(i phi_{n,j}); terms without 'e' at j
/// contribute nothing. The excitation count decreases by exactly one.
EmitterState apply_detection(const EmitterState& state, const DetectionEvent& event);

/// Full heralding run: all N detectors fire once on the fully excited
/// register. relative_rate is dimensionless; the 1/N! makes the ideal
/// symmetric arrangement rate-comparable across N. Absolute rates are out
/// of scope. Throws ZeroNormError when the outcome pattern interferes
/// destructively at the given phases (a legitimate physical outcome).
ProtocolResult run_protocol(int n, const PhaseMatrix& phases, const std::vector<Level>& outcomes,
                            const EmissionModel& emission = EmissionModel(),
                            Interpretation interpretation = Interpretation::atomic_qubits,
                            Engine engine = Engine::sequential);

/// Independent N!-path evaluator: explicitly enumerates every
/// detector-to-emitter bijection and accumulates exp(i sum_n phi_{n,sigma(n)})
/// onto the basis string where emitter sigma(n) holds outcome x_n. Equals
/// the sequential operator product. Guarded to N <= 8.
EmitterState amplitude_oracle_bruteforce(const PhaseMatrix& phases,
                                         const std::vector<Level>& outcomes);

/// Amplitude of one final basis string as perm(A0) * perm(A1), where A0 is
/// the submatrix of exp(i phi_{n,j}) over sigma+ detectors x '0' emitters
/// and A1 the sigma-/'1' counterpart. Basis strings inconsistent with the
/// outcome multiset have amplitude zero (not an error).
Amplitude amplitude_via_permanents(const PhaseMatrix& phases, const std::vector<Level>& outcomes,
                                   std::string_view basis_string);

}  // namespace dicke
