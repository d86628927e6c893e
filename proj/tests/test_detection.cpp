#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "dicke/detection.hpp"
#include "dicke/emitter_state.hpp"
#include "dicke/errors.hpp"
#include "dicke/geometry.hpp"

using namespace dicke;

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793238462643383279502884;

PhaseMatrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    PhaseMatrix matrix(n, n);
    for (int det = 0; det < n; ++det) {
        for (int j = 0; j < n; ++j) {
            matrix.at(det, j) = rows[static_cast<std::size_t>(det)][static_cast<std::size_t>(j)];
        }
    }
    return matrix;
}

/// Rows of the path-interference matrix for equally spaced detectors at
/// whole-cycle phases: entry (n, j) = j * (2 pi multiple), so every path
/// interferes constructively.
PhaseMatrix whole_cycle_matrix(int n) {
    PhaseMatrix matrix(n, n);
    for (int det = 0; det < n; ++det) {
        for (int j = 0; j < n; ++j) {
            matrix.at(det, j) = static_cast<double>(j + 1) * static_cast<double>(det) * kTwoPi;
        }
    }
    return matrix;
}

std::vector<Level> levels_from(const std::string& pattern) {
    std::vector<Level> out;
    for (char c : pattern) out.push_back(c == '1' ? Level::level1 : Level::level0);
    return out;
}

PhaseMatrix random_matrix(int n, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> dist(0.0, kTwoPi);
    PhaseMatrix matrix(n, n);
    for (int det = 0; det < n; ++det) {
        for (int j = 0; j < n; ++j) matrix.at(det, j) = dist(gen);
    }
    return matrix;
}

double max_amplitude_difference(const EmitterState& a, const EmitterState& b) {
    double worst = 0.0;
    for (const auto& [key, amp] : a.amplitudes()) {
        worst = std::max(worst, std::abs(amp - b.amplitude(key)));
    }
    for (const auto& [key, amp] : b.amplitudes()) {
        worst = std::max(worst, std::abs(amp - a.amplitude(key)));
    }
    return worst;
}

}  // namespace

TEST_CASE("one detection spreads a single excitation over all emitters") {
    const double delta = 0.8613;
    const EmitterState after = apply_detection(
        make_initial_state(3), DetectionEvent{1, {delta, 2.0 * delta, 3.0 * delta}, Level::level0});
    CHECK(after.support_size() == 3);
    CHECK(after.excitation_count() == 2);
    CHECK(std::abs(after.amplitude("0ee") - std::polar(1.0, delta)) < 1e-15);
    CHECK(std::abs(after.amplitude("e0e") - std::polar(1.0, 2.0 * delta)) < 1e-15);
    CHECK(std::abs(after.amplitude("ee0") - std::polar(1.0, 3.0 * delta)) < 1e-15);
}

TEST_CASE("single-emitter detection projects directly") {
    const EmitterState after =
        apply_detection(make_initial_state(1), DetectionEvent{1, {0.0}, Level::level1});
    CHECK(after.support_size() == 1);
    CHECK(after.amplitude("1") == Amplitude{1.0, 0.0});
}

TEST_CASE("detection acts linearly on superpositions") {
    const Amplitude a{0.6, 0.0};
    const Amplitude b{0.0, 0.8};
    const EmitterState state(2, AmplitudeMap{{"0e", a}, {"e0", b}});
    const double phi1 = 0.3;
    const double phi2 = 1.9;
    const EmitterState after =
        apply_detection(state, DetectionEvent{2, {phi1, phi2}, Level::level1});
    CHECK(after.support_size() == 2);
    CHECK(std::abs(after.amplitude("01") - a * std::polar(1.0, phi2)) < 1e-15);
    CHECK(std::abs(after.amplitude("10") - b * std::polar(1.0, phi1)) < 1e-15);
}

TEST_CASE("detection rejects exhausted registers and shape mismatches") {
    const EmitterState ground(2, AmplitudeMap{{"01", 1.0}});
    CHECK_THROWS_AS(apply_detection(ground, DetectionEvent{1, {0.0, 0.0}, Level::level0}),
                    ProtocolOverrunError);
    CHECK_THROWS_AS(
        apply_detection(make_initial_state(2), DetectionEvent{1, {0.0}, Level::level0}),
        InvalidArgumentError);
}

TEST_CASE("exactly cancelling contributions are pruned") {
    const double amp = 1.0 / std::sqrt(2.0);
    const EmitterState state(2, AmplitudeMap{{"0e", amp}, {"e0", -amp}});
    const EmitterState after =
        apply_detection(state, DetectionEvent{2, {0.0, 0.0}, Level::level0});
    CHECK(after.support_size() == 0);
}

TEST_CASE("polarizer mapping assigns sigma+ to level 0") {
    CHECK(to_level(Polarizer::sigma_plus) == Level::level0);
    CHECK(to_level(Polarizer::sigma_minus) == Level::level1);
}

TEST_CASE("whole-cycle phases herald uniform symmetric states") {
    for (int n = 2; n <= 6; ++n) {
        for (int ones = 0; ones <= n; ++ones) {
            std::string pattern(static_cast<std::size_t>(n - ones), '0');
            pattern.append(static_cast<std::size_t>(ones), '1');
            const ProtocolResult result =
                run_protocol(n, whole_cycle_matrix(n), levels_from(pattern));
            const EmitterState target = make_dicke_state({n, 2 * ones - n});
            CHECK(fidelity(result.final_state, target) >= 1.0 - 1e-10);
        }
    }
}

TEST_CASE("uniform outcome patterns produce product states at any phases") {
    std::mt19937_64 gen(19);
    for (int n = 2; n <= 5; ++n) {
        const ProtocolResult result = run_protocol(
            n, random_matrix(n, gen), std::vector<Level>(static_cast<std::size_t>(n), Level::level0));
        CHECK(result.final_state.support_size() == 1);
        const std::string zeros(static_cast<std::size_t>(n), '0');
        CHECK(std::abs(std::abs(result.final_state.amplitude(zeros)) - 1.0) < 1e-12);
        // All n! paths land on the same string, each a unit phasor.
        CHECK(result.squared_norm <=
              doctest::Approx(std::tgamma(n + 1.0) * std::tgamma(n + 1.0)).epsilon(1e-9));
    }
}

TEST_CASE("a half-cycle detector offset heralds the singlet") {
    // Rows (0, 0) and (pi, 2 pi): the two paths to |01> and |10> acquire
    // opposite signs, leaving the antisymmetric combination.
    const PhaseMatrix phases =
        matrix_from_rows({{0.0, 0.0}, {3.141592653589793, 2.0 * 3.141592653589793}});
    const ProtocolResult result = run_protocol(2, phases, levels_from("01"));
    const double amp = 1.0 / std::sqrt(2.0);
    const EmitterState singlet(2, AmplitudeMap{{"01", amp}, {"10", -amp}});
    CHECK(fidelity(result.final_state, singlet) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(result.final_state, make_dicke_state({2, 0})) < 1e-12);
    CHECK(result.squared_norm == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fully destructive patterns raise a heralding failure") {
    const PhaseMatrix phases =
        matrix_from_rows({{0.0, 0.0}, {3.141592653589793, 2.0 * 3.141592653589793}});
    CHECK_THROWS_AS(run_protocol(2, phases, levels_from("00")), ZeroNormError);
}

TEST_CASE("flat phases give path-counting amplitudes") {
    // With every phase zero, the amplitude of a consistent string counts the
    // detector-to-emitter matchings: (#zeros)! * (#ones)!.
    const PhaseMatrix phases(4, 4);
    const EmitterState raw = amplitude_oracle_bruteforce(phases, levels_from("0011"));
    CHECK(std::abs(raw.amplitude("0011") - Amplitude{4.0, 0.0}) < 1e-12);
    CHECK(std::abs(raw.amplitude("1100") - Amplitude{4.0, 0.0}) < 1e-12);
    CHECK(std::abs(amplitude_via_permanents(phases, levels_from("0011"), "0101") -
                   Amplitude{4.0, 0.0}) < 1e-12);
    const ProtocolResult result = run_protocol(4, phases, levels_from("0011"));
    // 6 strings x (2! 2!)^2 = 96 = 4! * 2! * 2!.
    CHECK(result.squared_norm == doctest::Approx(96.0).epsilon(1e-12));
}

TEST_CASE("relative rate combines path weight and branching probabilities") {
    const PhaseMatrix phases(2, 2);
    SUBCASE("balanced branching") {
        const ProtocolResult result = run_protocol(2, phases, levels_from("01"));
        // squared norm 2, branching (1/2)^2, 2! paths.
        CHECK(result.relative_rate == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("lopsided branching") {
        const ProtocolResult result =
            run_protocol(2, phases, levels_from("01"), EmissionModel(0.6, 0.8));
        CHECK(result.relative_rate == doctest::Approx(0.36 * 0.64).epsilon(1e-12));
    }
}

TEST_CASE("detector application order does not change the heralded state") {
    std::mt19937_64 gen(23);
    for (int n = 3; n <= 6; ++n) {
        const PhaseMatrix phases = random_matrix(n, gen);
        std::string pattern;
        for (int i = 0; i < n; ++i) pattern += (i % 2 == 0 ? '0' : '1');
        const std::vector<Level> outcomes = levels_from(pattern);

        const ProtocolResult reference = run_protocol(n, phases, outcomes);

        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        for (int rep = 0; rep < 4; ++rep) {
            std::shuffle(order.begin(), order.end(), gen);
            EmitterState state = make_initial_state(n);
            for (int det : order) {
                state = apply_detection(
                    state, DetectionEvent{det + 1, phases.row(det),
                                          outcomes[static_cast<std::size_t>(det)]});
            }
            const EmitterState renormalized = normalize(state).state;
            CHECK(max_amplitude_difference(renormalized, reference.final_state) < 1e-12);
        }
    }
}

TEST_CASE("polarizer placement is irrelevant at whole-cycle geometry") {
    const PhaseMatrix phases = whole_cycle_matrix(4);
    const ProtocolResult reference = run_protocol(4, phases, levels_from("1100"));
    for (const char* pattern : {"0011", "0101", "0110", "1001", "1010"}) {
        const ProtocolResult permuted = run_protocol(4, phases, levels_from(pattern));
        CHECK(max_amplitude_difference(permuted.final_state, reference.final_state) < 1e-12);
        CHECK(permuted.squared_norm ==
              doctest::Approx(reference.squared_norm).epsilon(1e-12));
    }
}

TEST_CASE("every excitation is consumed exactly once") {
    EmitterState state = make_initial_state(5);
    const PhaseMatrix phases(5, 5);
    for (int det = 0; det < 5; ++det) {
        CHECK(state.excitation_count() == 5 - det);
        state = apply_detection(state, DetectionEvent{det + 1, phases.row(det), Level::level0});
    }
    CHECK(state.excitation_count() == 0);
}

TEST_CASE("sequential, permanent-based and bruteforce amplitudes agree") {
    std::mt19937_64 gen(301);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int n = 2; n <= 7; ++n) {
        for (int rep = 0; rep < 3; ++rep) {
            const PhaseMatrix phases = random_matrix(n, gen);
            std::vector<Level> outcomes;
            for (int i = 0; i < n; ++i) {
                outcomes.push_back(coin(gen) == 0 ? Level::level0 : Level::level1);
            }
            const EmitterState raw = amplitude_oracle_bruteforce(phases, outcomes);
            const ProtocolResult sequential =
                run_protocol(n, phases, outcomes, EmissionModel(), Interpretation::atomic_qubits,
                             Engine::sequential);
            const ProtocolResult block =
                run_protocol(n, phases, outcomes, EmissionModel(), Interpretation::atomic_qubits,
                             Engine::permanent);
            const double scale_seq = std::sqrt(sequential.squared_norm);
            const double scale_blk = std::sqrt(block.squared_norm);
            for (const auto& [key, expected] : raw.amplitudes()) {
                const Amplitude via_seq = scale_seq * sequential.final_state.amplitude(key);
                const Amplitude via_blk = scale_blk * block.final_state.amplitude(key);
                const Amplitude via_perm = amplitude_via_permanents(phases, outcomes, key);
                const double reference = std::max(1.0, std::abs(expected));
                CHECK(std::abs(via_seq - expected) <= 1e-9 * reference);
                CHECK(std::abs(via_blk - expected) <= 1e-9 * reference);
                CHECK(std::abs(via_perm - expected) <= 1e-9 * reference);
            }
        }
    }
}

TEST_CASE("block-permanent amplitudes vanish for inconsistent strings") {
    const PhaseMatrix phases(3, 3);
    CHECK(amplitude_via_permanents(phases, levels_from("011"), "000") == Amplitude{0.0, 0.0});
    CHECK(amplitude_via_permanents(phases, levels_from("011"), "0e1") == Amplitude{0.0, 0.0});
    CHECK_THROWS_AS(amplitude_via_permanents(phases, levels_from("011"), "01"),
                    InvalidArgumentError);
}

TEST_CASE("bruteforce oracle is guarded against factorial blowup") {
    const PhaseMatrix phases(9, 9);
    CHECK_THROWS_AS(amplitude_oracle_bruteforce(phases, std::vector<Level>(9, Level::level0)),
                    InvalidArgumentError);
}

TEST_CASE("protocol validates its shape") {
    const PhaseMatrix phases(3, 3);
    CHECK_THROWS_AS(run_protocol(3, phases, levels_from("01")), InvalidArgumentError);
    CHECK_THROWS_AS(run_protocol(2, phases, levels_from("01")), InvalidArgumentError);
}

TEST_CASE("qubit carrier interpretation never changes the amplitudes") {
    std::mt19937_64 gen(88);
    const PhaseMatrix phases = random_matrix(4, gen);
    const std::vector<Level> outcomes = levels_from("0110");
    const ProtocolResult atoms = run_protocol(4, phases, outcomes, EmissionModel(),
                                              Interpretation::atomic_qubits);
    const ProtocolResult photons = run_protocol(4, phases, outcomes, EmissionModel(),
                                                Interpretation::photonic_polarization_qubits);
    CHECK(atoms.interpretation == Interpretation::atomic_qubits);
    CHECK(photons.interpretation == Interpretation::photonic_polarization_qubits);
    CHECK(atoms.squared_norm == photons.squared_norm);
    REQUIRE(atoms.final_state.support_size() == photons.final_state.support_size());
    for (const auto& [key, amp] : atoms.final_state.amplitudes()) {
        CHECK(photons.final_state.amplitude(key) == amp);
    }
}
