#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hvstab {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator) as long as they are produced by arithmetic or by
// canonicalize(); the helpers below preserve that invariant.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Serializes as "p/q", or just "p" for integers.
inline std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Accepts "p" or "p/q"; rejects anything mpq_class cannot parse exactly.
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

// base^e; a canonical base stays canonical under entrywise powers.
inline Rational rational_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), e);
    return r;
}

inline Rational rational_abs(const Rational& q) { return abs(q); }

}  // namespace hvstab
