#pragma once

#include <hvstab/trigpoly.hpp>

#include <array>
#include <complex>
#include <map>
#include <optional>

namespace hvstab {

// Hermite interpolation data on the unit-spaced nodes {-l, ..., r}: the
// second derivatives at the origin of the fundamental polynomials of the
// first kind h_k = [1 - 2 l_k'(k)(x - k)] l_k^2 and of the second kind
// g_k = (x - k) l_k^2, plus the slopes l_k'(k); the slopes equal zeta_k^{l,r}.
// On a balanced stencil the second derivatives reproduce the DDO weights:
// g_k''(0) = beta_k and h_k''(0) = alpha_{k-1} - alpha_k.
struct HermiteFundamentals {
    long l = 0, r = 0;
    std::map<long, Rational> h2pp;    // k -> h_k''(0)
    std::map<long, Rational> g2pp;    // k -> g_k''(0)
    std::map<long, Rational> lprime;  // k -> l_k'(k)
};

// Exact construction through the Lagrange basis. Requires l, r >= 0 with
// l + r >= 1 (std::domain_error). Sum h_k''(0) = 0 -- the second derivative
// of the constant-one reproduction identity -- is asserted on every call.
HermiteFundamentals hermite_fundamentals(long l, long r);

// Face weights of the two-moment conservative flux at unit spacing,
//   c_k = (1/L_k^2(k)) / sum_nu 1/L_nu^2(nu),  -l <= k <= r.
// All weights are positive; sum c_k = 1 and sum c_k zeta_k = 0 hold exactly
// and are asserted at construction.
struct FluxCoefficients {
    long l = 0, r = 0;
    std::map<long, Rational> c;
};

FluxCoefficients flux_coeffs(long l, long r);

// Re H~ as an exact cosine polynomial, where
//   H~(theta) = sum_k [2 c_k zeta_k + beta_k - c_k b_0] (e^{ik theta} - 1)
// is the trace of the two-moment Fourier symbol, beta_k = g_k''(0) and
// b_0 = sum beta_k.
TrigPoly hweno_trace(long l, long r);

// Sign test of Re H~ over a full period, decided exactly on cos theta in
// [-1, 1]. Re H~ >= 0 only controls the trace of the symbol, so the passing
// verdict is deliberately weaker than "stable". witness_x is a value of
// cos theta with Re H~ < 0 when the test fails.
enum class HwenoStatus { NecessaryConditionHolds, Unstable };

struct HwenoVerdict {
    HwenoStatus status = HwenoStatus::NecessaryConditionHolds;
    std::optional<Rational> witness_x;
};

HwenoVerdict hweno_classify(long l, long r);

// The 2x2 Fourier symbol M(theta) of the semi-discrete two-moment system,
// d/dt [U, V]^T = -M(theta) [U, V]^T at unit spacing, evaluated in floating
// point. At theta = 0 the (2,1) factor (e^{ik theta} - 1)/(i theta) is
// replaced by its limit k. Requires 0 <= theta <= 2 pi (std::domain_error).
std::array<std::array<std::complex<double>, 2>, 2> hweno_semidiscrete_matrix(
    long l, long r, double theta);

}  // namespace hvstab
