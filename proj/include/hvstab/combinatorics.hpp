#pragma once

#include <hvstab/ddo.hpp>
#include <hvstab/trigpoly.hpp>

#include <vector>

namespace hvstab {

// C_{m,n}(θ) = Σₖ binom(m, n+k) binom(m, n-k) cos kθ for 0 <= n <= m. The
// sum folds into {binom(m,n)², 2·binom(m,n+k)binom(m,n-k) for k >= 1}.
TrigPoly cfun(long m, long n);

// Checks the half-angle form Σₖ binom(m, m-k) binom(2k, 2n)
// sin^{2(m-k)}(θ/2) cos^{2(k-n)}(θ/2) against cfun(m, n) twice over: as exact
// polynomials in cos θ (substituting sin², cos² of the half angle), and
// numerically at the supplied θ samples to 1e-10.
bool cfun_alt_check(long m, long n, const std::vector<double>& theta_samples);

// m² C_{m-1,n-1} - n² C_{m,n} for m, n >= 1, verified on the way out against
// the termwise second derivative of cfun(m, n); a mismatch would falsify the
// recurrence and raises std::logic_error.
TrigPoly cfun_second_derivative(long m, long n);

// The four three-index families: BigC/BigS pair binom(m1, n+k) with
// binom(m2, n-k) under cos/sin, SmallC/SmallS pair it with binom(m2, n+1-k).
enum class ThreeIndexKind { BigC, BigS, SmallC, SmallS };

TrigPoly cfun3(long m1, long m2, long n, ThreeIndexKind kind);

// All three derivative identities linking the three-index families:
//   C' = -m1·s_{m1-1,m2;n-1} + n·S
//   S' =  m1·c_{m1-1,m2;n-1} - n·C
//   s' = (n+1)·c - m2·C_{m1,m2-1;n}
// checked as exact trig-polynomial identities.
bool cfun3_derivative_check(long m1, long m2, long n);

// P_{t,m}(x) = (x+t+1)(x+t+2)···(x+t+m): degree m, constant term (t+m)!/t!.
Poly rising_poly(long t, long m);

enum class QFamily { Sym, Check, Hat, Tilde };

struct QCoefficients {
    QFamily family = QFamily::Sym;
    long t = 0, m = 0;
    std::vector<Rational> coeffs;
};

// Even-power coefficients of Q(x)/x over the family's factorial prefactor,
// where Q(x) = A(x)B(x) - A(-x)B(-x) for the rising-factorial pair (A, B) of
// the family. Lengths: m for Sym/Check, m+1 for Hat/Tilde. The constant
// coefficient is cross-checked against its harmonic closed form
// (std::logic_error on mismatch).
QCoefficients qcoeffs(QFamily family, long t, long m);

// ReH(θ) of a stencil as an exact cosine polynomial, from the closed node
// weights (valid for every four-index stencil, canonical split or not).
TrigPoly reh_cos(const Stencil& s);

// Exact ReH(π) = Σₖ βₖ(-1)ᵏ. The node-side index split behind the closed
// forms assumes r' <= l'; wider right node counts are rejected rather than
// extrapolated (std::domain_error).
Rational reh_pi(const Stencil& s);

// The stencil family of closed-form item 1..8 at parameter t.
Stencil item_stencil(int item, long t);

// That item's ReH(π) from its closed form, binomial prefactor included.
Rational reh_pi_closed(int item, long t);

// Whether the representation identity holds for the family at (t, m): the
// alternating q-weighted even θ-derivatives of the single C-function,
// scaled by binom(M, n)^{-2}, must reproduce ReH of the family's stencil.
bool representation_check(QFamily family, long t, long m);

// Z_{p,q}(n) = Σ over 0 <= d₁ <= ... <= d_q <= p of Π (n-dᵢ)², with
// Z_{p,0} = 1 for p >= 0 and Z = 0 when p < 0 or q < 0.
Rational zfun(long p, long q, long n);

// Whether the expansion of the 2j-th derivative of C_{2n,n} into shifted
// C-functions with Z-function weights holds exactly (0 <= j <= n).
bool cder_expansion_check(long n, long j);

// ReH(π) of the balanced stencil (t+m, t, t+m, t) divided by its predicted
// leading coefficient binom(2t+2m, t+m)^{-1} (2^{m+1}/t) (-1)^{(m-1)/2};
// m odd, t >= 1. The ratio approaches 1 for large t.
Rational asymptotic_ratio(long m, long t);

// S_n = Σ_{k=0}^{2n+1} (-1)ᵏ H_k binom(2n+1, k)², summed directly.
Rational harmonic_alternating_sum(long n);

// S_n == (-1)^{n+1} 2^{4n} (n!)² / (2n+1)!
bool identity_check(long n);

// 64(n+1)²(8n+17) S_n + 8(32n³+164n²+270n+141) S_{n+1}
//   + (8n+9)(2n+5)² S_{n+2} == 0
bool recurrence_check(long n);

}  // namespace hvstab
