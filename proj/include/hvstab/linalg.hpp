#pragma once

#include <hvstab/rational.hpp>

#include <vector>

namespace hvstab {

// Solves A x = b exactly over the rationals by Gaussian elimination with
// first-nonzero pivoting. A must be square with A.size() == b.size();
// throws std::domain_error when the system is singular.
std::vector<Rational> solve_linear(std::vector<std::vector<Rational>> A,
                                   std::vector<Rational> b);

// Integer power with a non-negative exponent (0^0 = 1).
Integer int_pow(long base, unsigned long e);

}  // namespace hvstab
