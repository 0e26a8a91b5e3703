#pragma once

#include <hvstab/poly.hpp>

#include <map>
#include <utility>

namespace hvstab {

// Trigonometric polynomial Σ aₖ cos(kθ) + Σ bₖ sin(kθ) with rational
// coefficients. Keys are non-negative for cos and positive for sin; zero
// coefficients are never stored, so equality is structural.
struct TrigPoly {
    std::map<long, Rational> cos_coeffs;  // k >= 0
    std::map<long, Rational> sin_coeffs;  // k >= 1

    // Accumulate v·cos(kθ) / v·sin(kθ), folding negative harmonics through
    // cos(-kθ) = cos(kθ) and sin(-kθ) = -sin(kθ); sin(0·θ) vanishes.
    void add_cos(long k, const Rational& v);
    void add_sin(long k, const Rational& v);

    [[nodiscard]] bool is_zero() const { return cos_coeffs.empty() && sin_coeffs.empty(); }
    [[nodiscard]] bool sin_part_empty() const { return sin_coeffs.empty(); }
    [[nodiscard]] long degree() const;  // highest harmonic index, 0 when zero
    [[nodiscard]] Rational cos_coeff(long k) const;  // 0 when absent
    [[nodiscard]] Rational sin_coeff(long k) const;
    [[nodiscard]] double eval(double theta) const;

    bool operator==(const TrigPoly& other) const = default;
};

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
TrigPoly operator-(const TrigPoly& a);
TrigPoly operator*(const Rational& s, const TrigPoly& a);

// Exact product via the cos·cos, sin·sin, and cos·sin product-to-sum rules.
TrigPoly trig_mul(const TrigPoly& a, const TrigPoly& b);

// d/dθ: cos(kθ) -> -k sin(kθ), sin(kθ) -> k cos(kθ).
TrigPoly derivative(const TrigPoly& t);

// Real and imaginary parts of Σ cₖ e^{ikθ} for real rational cₖ: the pair
// (Σ cₖ cos kθ, Σ cₖ sin kθ) with negative harmonics folded.
std::pair<TrigPoly, TrigPoly> split_complex(const std::map<long, Rational>& coeffs);

// Chebyshev conversion: the polynomial p with p(cos θ) = t(θ) identically,
// via cos(kθ) = T_k(cos θ). The sin part must be empty (domain_error).
Poly to_cos_poly(const TrigPoly& t);

// Exact value at θ = π: the alternating sum of the cosine coefficients (all
// sin(kπ) vanish).
Rational eval_at_pi(const TrigPoly& t);

}  // namespace hvstab
