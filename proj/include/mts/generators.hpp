#pragma once

// Seeded random inputs for property suites.

#include <cstdint>
#include <random>

#include "mts/family.hpp"
#include "mts/rational.hpp"

namespace mts {

using Rng = std::mt19937_64;

// Small ordinals: naturals, w*k + j, w^2 forms, w^w.
Ordinal random_ordinal(Rng& rng, int depth = 2);
// Expressions over every constructor, at most depth levels of combinators.
Family random_family(Rng& rng, int depth = 3);
// Support drawn from [lo, hi] with the given density, integer coefficients in [-c, c] over small denominators.
SparseVector random_vector(Rng& rng, std::uint32_t lo, std::uint32_t hi, double density = 0.6,
                           int c = 4);
FinSet random_finset(Rng& rng, std::uint32_t lo, std::uint32_t hi, double density = 0.5);

}  // namespace mts
