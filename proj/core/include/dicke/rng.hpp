#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dicke {

/// splitmix64 finalizer step. Used only to derive well-mixed seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Maps (seed, stream index) to an independent, well-mixed stream seed.
/// Distinct indices give uncorrelated streams, so samples can be evaluated
/// in any order (or in parallel) with identical results.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t state = seed ^ (stream_index * 0xD1342543DE82EF95ULL + 0x9E3779B97F4A7C15ULL);
    splitmix64(state);
    return splitmix64(state);
}

/// Deterministic per-sample generator. mt19937_64 output is fully pinned by
/// the standard, and the double mappings below avoid std::*_distribution,
/// whose sequences are implementation-defined. Identical (seed, index) thus
/// yields bitwise-identical draws on every platform.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t stream_index)
        : gen_(derive_stream_seed(seed, stream_index)) {}

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform on [-1, 1).
    double symmetric_uniform() { return 2.0 * uniform() - 1.0; }

    /// Standard normal via Box-Muller; consumes exactly two draws per call.
    double normal() {
        // Guard against log(0).
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace dicke
