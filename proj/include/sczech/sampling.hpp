#pragma once

// Seeded random ring elements, unimodular matrices and plane points for the
// property checks.

#include <random>

#include "sczech/quad_arith.hpp"

namespace sczech {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Uniform over nonzero z with norm(z) <= max_norm.
QuadInt random_element(Rng& rng, i64 max_norm, const FieldParams& f);
/// Random element of SL_2(O_K) whose entries all have norm <= max_norm.
/// Roughly one draw in ten has c = 0.
SL2Matrix random_sl2(Rng& rng, i64 max_norm, const FieldParams& f);
/// Point with both coordinates uniform in [-scale, scale].
cplx random_point(Rng& rng, double scale);

}  // namespace sczech
