#include <hvstab/combinatorics.hpp>

#include <hvstab/linalg.hpp>
#include <hvstab/numbers.hpp>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hvstab {

TrigPoly cfun(long m, long n) {
    if (n < 0 || n > m) throw std::domain_error("cfun: requires 0 <= n <= m");
    TrigPoly out;
    for (long k = -n; k <= m - n; ++k) {
        Rational w = binom(m, n + k) * binom(m, n - k);
        if (sgn(w) != 0) out.add_cos(k, w);
    }
    return out;
}

namespace {

Poly poly_neg_x(const Poly& p) {
    Poly out = p;
    for (std::size_t i = 1; i < out.c.size(); i += 2) out.c[i] = -out.c[i];
    return out;
}

}  // namespace

bool cfun_alt_check(long m, long n, const std::vector<double>& theta_samples) {
    if (n < 0 || n > m) throw std::domain_error("cfun_alt_check: requires 0 <= n <= m");
    const TrigPoly direct = cfun(m, n);

    // Exact route: substitute sin²(θ/2) = (1-x)/2, cos²(θ/2) = (1+x)/2 and
    // compare polynomials in x = cos θ.
    const Poly half_sin2({make_rational(1, 2), make_rational(-1, 2)});
    const Poly half_cos2({make_rational(1, 2), make_rational(1, 2)});
    Poly alt;
    for (long k = n; k <= m; ++k) {
        Rational w = binom(m, m - k) * binom(2 * k, 2 * n);
        if (sgn(w) == 0) continue;
        Poly term({w});
        for (long i = 0; i < m - k; ++i) term = term * half_sin2;
        for (long i = 0; i < k - n; ++i) term = term * half_cos2;
        alt = alt + term;
    }
    if (!(alt == to_cos_poly(direct))) return false;

    // Floating route: evaluate the half-angle form literally.
    for (double theta : theta_samples) {
        const double s = std::sin(theta / 2), c = std::cos(theta / 2);
        double acc = 0.0;
        for (long k = n; k <= m; ++k) {
            Rational w = binom(m, m - k) * binom(2 * k, 2 * n);
            if (sgn(w) == 0) continue;
            acc += w.get_d() * std::pow(s, 2.0 * static_cast<double>(m - k)) *
                   std::pow(c, 2.0 * static_cast<double>(k - n));
        }
        if (std::fabs(acc - direct.eval(theta)) > 1e-10) return false;
    }
    return true;
}

TrigPoly cfun_second_derivative(long m, long n) {
    if (m < 1 || n < 1) throw std::domain_error("cfun_second_derivative: requires m, n >= 1");
    TrigPoly rhs = Rational(m * m) * cfun(m - 1, n - 1) - Rational(n * n) * cfun(m, n);
    if (!(derivative(derivative(cfun(m, n))) == rhs))
        throw std::logic_error("cfun_second_derivative: recurrence failed");
    return rhs;
}

TrigPoly cfun3(long m1, long m2, long n, ThreeIndexKind kind) {
    if (m1 < 0 || m2 < 0) throw std::domain_error("cfun3: negative order");
    const bool big = kind == ThreeIndexKind::BigC || kind == ThreeIndexKind::BigS;
    const bool is_cos = kind == ThreeIndexKind::BigC || kind == ThreeIndexKind::SmallC;
    TrigPoly out;
    for (long k = -n; k <= m1 - n; ++k) {
        Rational w = binom(m1, n + k) * binom(m2, big ? n - k : n + 1 - k);
        if (sgn(w) == 0) continue;
        if (is_cos)
            out.add_cos(k, w);
        else
            out.add_sin(k, w);
    }
    return out;
}

bool cfun3_derivative_check(long m1, long m2, long n) {
    using K = ThreeIndexKind;
    const TrigPoly zero;

    TrigPoly lhs = derivative(cfun3(m1, m2, n, K::BigC));
    TrigPoly rhs = (m1 >= 1 ? Rational(-m1) * cfun3(m1 - 1, m2, n - 1, K::SmallS) : zero) +
                   Rational(n) * cfun3(m1, m2, n, K::BigS);
    if (!(lhs == rhs)) return false;

    lhs = derivative(cfun3(m1, m2, n, K::BigS));
    rhs = (m1 >= 1 ? Rational(m1) * cfun3(m1 - 1, m2, n - 1, K::SmallC) : zero) +
          Rational(-n) * cfun3(m1, m2, n, K::BigC);
    if (!(lhs == rhs)) return false;

    lhs = derivative(cfun3(m1, m2, n, K::SmallS));
    rhs = Rational(n + 1) * cfun3(m1, m2, n, K::SmallC) +
          (m2 >= 1 ? Rational(-m2) * cfun3(m1, m2 - 1, n, K::BigC) : zero);
    return lhs == rhs;
}

Poly rising_poly(long t, long m) {
    if (t < 0 || m < 0) throw std::domain_error("rising_poly: negative parameter");
    Poly p({Rational(1)});
    for (long i = 1; i <= m; ++i) p = p * Poly({Rational(t + i), Rational(1)});
    return p;
}

QCoefficients qcoeffs(QFamily family, long t, long m) {
    if (t < 0 || m < 1) throw std::domain_error("qcoeffs: requires t >= 0, m >= 1");
    Poly a, b;
    Rational pref;
    long count = 0;
    switch (family) {
        case QFamily::Sym:
            a = rising_poly(t, m);
            b = a;
            pref = make_rational(factorial(t + m), factorial(t));
            pref *= pref;
            count = m;
            break;
        case QFamily::Check:
            a = rising_poly(t, m);
            b = rising_poly(t + 1, m);
            pref = make_rational(factorial(t + m + 1) * factorial(t + m),
                                 factorial(t + 1) * factorial(t));
            count = m;
            break;
        case QFamily::Hat:
            a = rising_poly(t, m + 1);
            b = rising_poly(t, m);
            pref = make_rational(factorial(t + m + 1) * factorial(t + m),
                                 factorial(t) * factorial(t));
            count = m + 1;
            break;
        case QFamily::Tilde:
            a = rising_poly(t + 1, m + 1);
            b = rising_poly(t, m);
            pref = make_rational(factorial(t + m + 2) * factorial(t + m),
                                 factorial(t + 1) * factorial(t));
            count = m + 1;
            break;
    }

    // Q(x) = A(x)B(x) - A(-x)B(-x) is odd; its even part must cancel.
    Poly q = a * b - poly_neg_x(a) * poly_neg_x(b);
    for (std::size_t i = 0; i < q.c.size(); i += 2) {
        if (sgn(q.c[i]) != 0) throw std::logic_error("qcoeffs: Q is not odd");
    }

    QCoefficients out;
    out.family = family;
    out.t = t;
    out.m = m;
    out.coeffs.assign(static_cast<std::size_t>(count), Rational(0));
    for (long j = 0; j < count; ++j) {
        const std::size_t idx = static_cast<std::size_t>(2 * j + 1);  // [x^{2j}] of Q/x
        if (idx < q.c.size()) out.coeffs[static_cast<std::size_t>(j)] = q.c[idx] / pref;
    }

    // The constant coefficient has a harmonic-number closed form per family;
    // a mismatch means the expansion went wrong.
    Rational q0;
    switch (family) {
        case QFamily::Sym:
            q0 = Rational(4) * zeta(t + m, t, 0);
            break;
        case QFamily::Check:
            q0 = Rational(2) * (zeta(t + m + 1, t + 1, 0) + zeta(t + m, t, 0));
            break;
        case QFamily::Hat:
            q0 = Rational(2) * (zeta(t + m + 1, t, 0) + zeta(t + m, t, 0));
            break;
        case QFamily::Tilde:
            q0 = Rational(2) * (zeta(t + m + 2, t + 1, 0) + zeta(t + m, t, 0));
            break;
    }
    if (out.coeffs.front() != q0) throw std::logic_error("qcoeffs: constant term mismatch");
    return out;
}

TrigPoly reh_cos(const Stencil& s) {
    return split_complex(closed_beta(s.l, s.r, s.l_prime, s.r_prime)).first;
}

Rational reh_pi(const Stencil& s) {
    if (s.r_prime > s.l_prime)
        throw std::domain_error("reh_pi: downwind-heavy node split not supported");
    return eval_at_pi(reh_cos(s));
}

Stencil item_stencil(int item, long t) {
    if (t < 0) throw std::domain_error("item_stencil: negative t");
    switch (item) {
        case 1: return stencil_from_indices(t + 2, t, t + 2, t);
        case 2: return stencil_from_indices(t + 3, t, t + 3, t);
        case 3: return stencil_from_indices(t + 3, t + 1, t + 2, t);
        case 4: return stencil_from_indices(t + 4, t + 1, t + 3, t);
        case 5: return stencil_from_indices(t + 3, t, t + 2, t);
        case 6: return stencil_from_indices(t + 4, t, t + 3, t);
        case 7: return stencil_from_indices(t + 4, t + 1, t + 2, t);
        case 8: return stencil_from_indices(t + 5, t + 1, t + 3, t);
        default: throw std::domain_error("item_stencil: item must be 1..8");
    }
}

Rational reh_pi_closed(int item, long t) {
    if (t < 0) throw std::domain_error("reh_pi_closed: negative t");
    switch (item) {
        case 1: {
            Rational q0 = make_rational(4 * (2 * t + 3), (t + 1) * (t + 2));
            return -q0 / Rational(t + 1) / binom(2 * t + 4, t + 2);
        }
        case 2:
            return make_rational(-8, t + 1) *
                   (Rational(2) + make_rational(3, t + 1) + make_rational(1, t + 2) +
                    make_rational(1, t + 3)) /
                   binom(2 * t + 6, t + 3);
        case 3:
            return make_rational(-4 * (2 * t + 5), (t + 1) * (t + 2) * (t + 3)) /
                   binom(2 * t + 5, t + 2);
        case 4:
        case 6:
            // The two mixed cubic families share one value of ReH(π).
            return make_rational(-4 * (t + 5) * (2 * t + 5) * (2 * t + 7),
                                 (t + 1) * (t + 2) * (t + 3) * (t + 4)) /
                   binom(2 * t + 7, t + 3);
        case 5:
            return make_rational(-4 * (2 * t + 5) * (t * t + 6 * t + 7),
                                 (t + 1) * (t + 1) * (t + 2) * (t + 3)) /
                   binom(2 * t + 5, t + 2);
        case 7:
            return make_rational(-4 * (t + 5) * (2 * t + 5),
                                 (t + 1) * (t + 2) * (t + 4)) /
                   binom(2 * t + 6, t + 2);
        case 8:
            return make_rational(-8 * (2 * t + 7) * (t * t + 8 * t + 13),
                                 (t + 1) * (t + 2) * (t + 3) * (t + 5)) /
                   binom(2 * t + 8, t + 3);
        default:
            throw std::domain_error("reh_pi_closed: item must be 1..8");
    }
}

bool representation_check(QFamily family, long t, long m) {
    const QCoefficients q = qcoeffs(family, t, m);
    long big_m = 0;
    Stencil st;
    switch (family) {
        case QFamily::Sym:
            big_m = 2 * t + 2 * m;
            st = stencil_from_indices(t + m, t, t + m, t);
            break;
        case QFamily::Check:
            big_m = 2 * t + 2 * m + 1;
            st = stencil_from_indices(t + m + 1, t + 1, t + m, t);
            break;
        case QFamily::Hat:
            big_m = 2 * t + 2 * m + 1;
            st = stencil_from_indices(t + m + 1, t, t + m, t);
            break;
        case QFamily::Tilde:
            big_m = 2 * t + 2 * m + 2;
            st = stencil_from_indices(t + m + 2, t + 1, t + m, t);
            break;
    }
    const long n = t + m;

    TrigPoly cur = cfun(big_m, n);
    TrigPoly lhs;
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
        Rational w = j % 2 == 0 ? q.coeffs[j] : -q.coeffs[j];
        lhs = lhs + w * cur;
        if (j + 1 < q.coeffs.size()) cur = derivative(derivative(cur));
    }
    Rational b = binom(big_m, n);
    lhs = (Rational(1) / (b * b)) * lhs;
    return lhs == reh_cos(st);
}

Rational zfun(long p, long q, long n) {
    if (q == 0) return p >= 0 ? Rational(1) : Rational(0);
    if (p < 0 || q < 0) return Rational(0);
    // Peel off the largest index: Z_{p,q} = Σ_{d<=p} (n-d)² Z_{d,q-1}, which
    // the running prefix sum turns into one pass per layer.
    std::vector<Rational> layer(static_cast<std::size_t>(p) + 1, Rational(1));
    for (long qq = 1; qq <= q; ++qq) {
        Rational acc(0);
        std::vector<Rational> next(layer.size());
        for (long d = 0; d <= p; ++d) {
            acc += Rational((n - d) * (n - d)) * layer[static_cast<std::size_t>(d)];
            next[static_cast<std::size_t>(d)] = acc;
        }
        layer = std::move(next);
    }
    return layer.back();
}

bool cder_expansion_check(long n, long j) {
    if (n < 0 || j < 0 || j > n)
        throw std::domain_error("cder_expansion_check: requires 0 <= j <= n");
    TrigPoly lhs = cfun(2 * n, n);
    for (long i = 0; i < j; ++i) lhs = derivative(derivative(lhs));

    TrigPoly rhs;
    for (long k = 0; k <= j; ++k) {
        Rational c = make_rational(factorial(2 * n), factorial(2 * n - j + k));
        c = c * c * zfun(j - k, k, n);
        if (k % 2 == 1) c = -c;
        if (sgn(c) == 0) continue;
        rhs = rhs + c * cfun(2 * n - j + k, n - j + k);
    }
    return lhs == rhs;
}

Rational asymptotic_ratio(long m, long t) {
    if (m < 1 || m % 2 == 0) throw std::domain_error("asymptotic_ratio: m must be odd");
    if (t < 1) throw std::domain_error("asymptotic_ratio: requires t >= 1");
    Rational lead = make_rational(int_pow(2, static_cast<unsigned long>(m + 1)), Integer(t)) /
                    binom(2 * t + 2 * m, t + m);
    if (((m - 1) / 2) % 2 == 1) lead = -lead;  // sin(mπ/2) for odd m
    return reh_pi(stencil_from_indices(t + m, t, t + m, t)) / lead;
}

Rational harmonic_alternating_sum(long n) {
    if (n < 0) throw std::domain_error("harmonic_alternating_sum: negative n");
    Rational acc(0);
    for (long k = 0; k <= 2 * n + 1; ++k) {
        Rational term = harmonic(k) * binom(2 * n + 1, k) * binom(2 * n + 1, k);
        if (k % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

bool identity_check(long n) {
    if (n < 0) throw std::domain_error("identity_check: negative n");
    Rational rhs = make_rational(int_pow(2, static_cast<unsigned long>(4 * n)) * factorial(n) *
                                     factorial(n),
                                 factorial(2 * n + 1));
    if (n % 2 == 0) rhs = -rhs;  // (-1)^{n+1}
    return harmonic_alternating_sum(n) == rhs;
}

bool recurrence_check(long n) {
    if (n < 0) throw std::domain_error("recurrence_check: negative n");
    Rational acc = Rational(64 * (n + 1) * (n + 1) * (8 * n + 17)) *
                   harmonic_alternating_sum(n);
    acc += Rational(8 * (32 * n * n * n + 164 * n * n + 270 * n + 141)) *
           harmonic_alternating_sum(n + 1);
    acc += Rational((8 * n + 9) * (2 * n + 5) * (2 * n + 5)) *
           harmonic_alternating_sum(n + 2);
    return sgn(acc) == 0;
}

}  // namespace hvstab
