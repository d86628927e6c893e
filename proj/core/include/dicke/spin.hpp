#pragma once

#include "dicke/emitter_state.hpp"

namespace dicke {

/// <S_z> in units of hbar. Each '1' contributes +1/2, each '0' -1/2.
/// Requires a normalized, fully de-excited register.
double total_spin_z(const EmitterState& state);

/// <S^2> in units of hbar^2, via S^2 = S_z^2 + (S+S- + S-S+)/2 with
/// collective ladder operators acting on basis strings.
double total_spin_squared(const EmitterState& state);

}  // namespace dicke
