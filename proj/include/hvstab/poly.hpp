#pragma once

#include <hvstab/rational.hpp>

#include <optional>
#include <vector>

namespace hvstab {

// Dense univariate polynomial over the rationals, lowest degree first.
// Normal form: no trailing zero coefficients; the zero polynomial is {}.
struct Poly {
    std::vector<Rational> c;

    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs);

    [[nodiscard]] bool is_zero() const { return c.empty(); }
    [[nodiscard]] long degree() const { return static_cast<long>(c.size()) - 1; }
    [[nodiscard]] const Rational& leading() const;
    [[nodiscard]] Rational eval(const Rational& x) const;
    [[nodiscard]] double eval_double(double x) const;

    bool operator==(const Poly& other) const { return c == other.c; }
};

Poly poly_from_longs(std::initializer_list<long> coeffs);

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Rational& s, const Poly& a);

Poly derivative(const Poly& p);

// Quotient and remainder of exact rational division: a = q*b + r, deg r < deg b.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);

// Monic gcd via the Euclidean algorithm.
Poly poly_gcd(Poly a, Poly b);

// p with all repeated factors collapsed to multiplicity one (the radical).
Poly squarefree_part(const Poly& p);

// Divides out every factor of (1 - x); returns the reduced polynomial and the
// extracted multiplicity.
std::pair<Poly, int> divide_out_one_minus_x(Poly p);

enum class IntervalSign { StrictlyPositive, StrictlyNegative, Mixed, IdenticallyZero };
enum class WitnessKind { SignChange, TouchZero };

// Verdict of an exact sign test on an interval. On Mixed, `witness` is a
// rational point in the interval: for SignChange it is a point where the
// polynomial takes the minority sign (by measure); for TouchZero (the
// polynomial has a constant sign except for isolated zeros) it locates a
// zero, either exactly or as the midpoint of an isolating interval of width
// below 1/1024.
struct SignReport {
    IntervalSign sign = IntervalSign::IdenticallyZero;
    std::optional<Rational> witness;
    WitnessKind witness_kind = WitnessKind::SignChange;
};

// Exact sign of p on [lo, hi] (or [lo, hi) when open_at_hi): Sturm sequences
// on the squarefree part isolate every root, then one rational sample per
// root-free segment decides the sign pattern. Strictness is literal — any
// zero of p inside the queried set, including a touching zero, prevents a
// Strictly* verdict.
SignReport sign_on_interval(const Poly& p, const Rational& lo, const Rational& hi,
                            bool open_at_hi);

// True iff p >= 0 everywhere on the closed interval [lo, hi]; on failure,
// `witness` receives a rational point with p(witness) < 0.
bool nonneg_on_closed(const Poly& p, const Rational& lo, const Rational& hi,
                      std::optional<Rational>* witness = nullptr);

// A rational point of [lo, hi] where p takes the requested sign (+1 or -1),
// preferring interior points over the endpoints; throws std::domain_error if
// p never attains that sign there.
Rational sample_with_sign(const Poly& p, const Rational& lo, const Rational& hi,
                          int wanted);

// Number of distinct real roots of p in the closed interval [lo, hi].
long count_roots(const Poly& p, const Rational& lo, const Rational& hi);

}  // namespace hvstab
