#pragma once

#include <vector>

#include "mts/rational.hpp"

namespace mts {

struct LpResult {
    bool unbounded = false;
    Rational value;
    std::vector<Rational> x;
};

// maximize c.x subject to A x <= b, x >= 0, where b >= 0. Exact tableau
// simplex with Bland's rule, so it always terminates.
LpResult maximize_leq(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                      const std::vector<Rational>& c);

}  // namespace mts
