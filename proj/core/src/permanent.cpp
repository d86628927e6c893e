#include "dicke/permanent.hpp"

#include <bit>
#include <cstdint>

#include "dicke/errors.hpp"

namespace dicke {

std::complex<double> permanent(const std::vector<std::complex<double>>& matrix, int size) {
    if (size < 0 || static_cast<std::size_t>(size) * static_cast<std::size_t>(size) != matrix.size()) {
        throw InvalidArgumentError("permanent: matrix storage does not match size");
    }
    if (size == 0) return {1.0, 0.0};
    if (size > 24) {
        throw InvalidArgumentError("permanent: size above 2^k guard");
    }
    const auto k = static_cast<std::uint32_t>(size);

    std::vector<std::complex<double>> row_sums(k, {0.0, 0.0});
    std::complex<double> total{0.0, 0.0};
    std::uint32_t gray = 0;

    const std::uint64_t subsets = std::uint64_t{1} << k;
    for (std::uint64_t iter = 1; iter < subsets; ++iter) {
        // Gray code of iter; exactly one column flips per step.
        const auto next_gray = static_cast<std::uint32_t>(iter ^ (iter >> 1));
        const std::uint32_t changed = gray ^ next_gray;
        const int column = std::countr_zero(changed);
        const bool added = (next_gray & changed) != 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            const auto& entry = matrix[i * k + static_cast<std::uint32_t>(column)];
            if (added) {
                row_sums[i] += entry;
            } else {
                row_sums[i] -= entry;
            }
        }
        gray = next_gray;

        std::complex<double> product{1.0, 0.0};
        for (std::uint32_t i = 0; i < k; ++i) product *= row_sums[i];

        const bool odd_subset = (std::popcount(next_gray) & 1U) != 0;
        if (odd_subset) {
            total -= product;
        } else {
            total += product;
        }
    }
    // (-1)^k prefactor.
    return (k & 1U) != 0 ? -total : total;
}

}  // namespace dicke
