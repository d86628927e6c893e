#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "dicke/errors.hpp"
#include "dicke/permanent.hpp"

using namespace dicke;
using Complex = std::complex<double>;

namespace {

/// Defining-formula oracle: sum over all row-to-column assignments.
Complex permanent_oracle(const std::vector<Complex>& matrix, int size) {
    std::vector<int> columns(static_cast<std::size_t>(size));
    std::iota(columns.begin(), columns.end(), 0);
    Complex sum = 0.0;
    do {
        Complex term = 1.0;
        for (int row = 0; row < size; ++row) {
            term *= matrix[static_cast<std::size_t>(row) * static_cast<std::size_t>(size) +
                           static_cast<std::size_t>(columns[static_cast<std::size_t>(row)])];
        }
        sum += term;
    } while (std::next_permutation(columns.begin(), columns.end()));
    return sum;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

TEST_CASE("empty and single-entry matrices") {
    CHECK(permanent({}, 0) == Complex{1.0, 0.0});
    CHECK(permanent({Complex{2.0, -3.0}}, 1) == Complex{2.0, -3.0});
}

TEST_CASE("two-by-two permanent adds both diagonals") {
    // [[a, b], [c, d]] -> a d + b c
    const std::vector<Complex> m = {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}, {4.0, 0.0}};
    CHECK(std::abs(permanent(m, 2) - Complex{10.0, 0.0}) < 1e-14);

    const std::vector<Complex> c = {{0.0, 1.0}, {1.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    CHECK(std::abs(permanent(c, 2) - Complex{-1.0 + 1.0, 0.0}) < 1e-14);  // i*i + 1*1
}

TEST_CASE("all-ones matrix gives the factorial") {
    for (int k = 1; k <= 9; ++k) {
        const std::vector<Complex> ones(static_cast<std::size_t>(k) * static_cast<std::size_t>(k),
                                        Complex{1.0, 0.0});
        const Complex value = permanent(ones, k);
        CHECK(value.real() == doctest::Approx(factorial(k)).epsilon(1e-12));
        CHECK(std::abs(value.imag()) < 1e-9);
    }
}

TEST_CASE("matches the defining-formula oracle on random complex matrices") {
    std::mt19937_64 gen(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int size = 1; size <= 7; ++size) {
        for (int rep = 0; rep < 8; ++rep) {
            std::vector<Complex> matrix(static_cast<std::size_t>(size) *
                                        static_cast<std::size_t>(size));
            for (auto& entry : matrix) entry = Complex{dist(gen), dist(gen)};
            const Complex fast = permanent(matrix, size);
            const Complex slow = permanent_oracle(matrix, size);
            CHECK(std::abs(fast - slow) <=
                  1e-10 * std::max({1.0, std::abs(fast), std::abs(slow)}));
        }
    }
}

TEST_CASE("unit-phasor matrices stay accurate") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * 3.141592653589793);
    for (int size = 2; size <= 6; ++size) {
        std::vector<Complex> matrix(static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
        for (auto& entry : matrix) entry = std::polar(1.0, phase(gen));
        CHECK(std::abs(permanent(matrix, size) - permanent_oracle(matrix, size)) < 1e-11);
    }
}

TEST_CASE("size guards") {
    CHECK_THROWS_AS(permanent({}, -1), InvalidArgumentError);
    CHECK_THROWS_AS(permanent({Complex{1.0, 0.0}}, 2), InvalidArgumentError);  // size mismatch
    CHECK_THROWS_AS(permanent(std::vector<Complex>(25 * 25), 25), InvalidArgumentError);
}
