#pragma once

#include <hvstab/rational.hpp>

namespace hvstab {

// Factorial n! with a process-wide memo table (thread safe).
Integer factorial(long n);

// Binomial coefficient; 0 outside 0 <= k <= n. Requires n >= 0.
Rational binom(long n, long k);

// Same value as an integer, for contexts that index or multiply heavily.
Integer binom_z(long n, long k);

// Harmonic number H_k = 1 + 1/2 + ... + 1/k, H_0 = 0. Requires k >= 0.
Rational harmonic(long k);

// C^{m,n}_k = m! n! / ((m+k)! (n-k)!). Requires m, n >= 0 and -m <= k <= n.
Rational cmn(long m, long n, long k);

// zeta_k^{m,n} = H_{m+k} - H_{n-k}. Requires m, n >= 0 and -m <= k <= n.
Rational zeta(long m, long n, long k);

}  // namespace hvstab
