#pragma once

#include <complex>
#include <vector>

namespace dicke {

/// Permanent of a dense k x k complex matrix (row-major), by Ryser's
/// inclusion-exclusion formula with Gray-code column updates:
///
///   perm(A) = (-1)^k  sum_{S != {}} (-1)^|S| prod_i sum_{j in S} a_ij
///
/// Each Gray-code step toggles one column in the running row sums, so the
/// cost is O(2^k * k). The empty matrix has permanent 1 (empty product).
std::complex<double> permanent(const std::vector<std::complex<double>>& matrix, int size);

}  // namespace dicke
