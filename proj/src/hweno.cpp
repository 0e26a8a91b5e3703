#include <hvstab/hweno.hpp>
#include <hvstab/numbers.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace hvstab {

namespace {

// Lagrange basis polynomial l_k on the unit-spaced nodes {-l, ..., r}:
// the node product divided by the scalar node product at x = k.
Poly lagrange_basis(long l, long r, long k) {
    Poly num(std::vector<Rational>{Rational(1)});
    Rational den(1);
    for (long nu = -l; nu <= r; ++nu) {
        if (nu == k) continue;
        num = num * Poly(std::vector<Rational>{Rational(-nu), Rational(1)});
        den *= Rational(k - nu);
    }
    return (Rational(1) / den) * num;
}

Rational second_derivative_at_zero(const Poly& p) {
    return p.c.size() > 2 ? Rational(2) * p.c[2] : Rational(0);
}

void require_stencil(long l, long r, const char* who) {
    if (l < 0 || r < 0 || l + r < 1)
        throw std::domain_error(std::string(who) + ": need l, r >= 0 with l + r >= 1");
}

}  // namespace

HermiteFundamentals hermite_fundamentals(long l, long r) {
    require_stencil(l, r, "hermite_fundamentals");
    HermiteFundamentals f;
    f.l = l;
    f.r = r;
    Rational h_sum(0);
    for (long k = -l; k <= r; ++k) {
        const Poly lk = lagrange_basis(l, r, k);
        const Poly lk2 = lk * lk;
        const Rational lpk = derivative(lk).eval(Rational(k));
        const Poly hk =
            Poly(std::vector<Rational>{Rational(1) + Rational(2 * k) * lpk,
                                       Rational(-2) * lpk}) *
            lk2;
        const Poly gk = Poly(std::vector<Rational>{Rational(-k), Rational(1)}) * lk2;
        f.h2pp[k] = second_derivative_at_zero(hk);
        f.g2pp[k] = second_derivative_at_zero(gk);
        f.lprime[k] = lpk;
        h_sum += f.h2pp[k];
    }
    // Interpolating the constant 1 gives sum h_k identically one; its second
    // derivative at 0 must vanish.
    if (h_sum != 0) throw std::logic_error("hermite_fundamentals: sum h_k''(0) != 0");
    return f;
}

FluxCoefficients flux_coeffs(long l, long r) {
    require_stencil(l, r, "flux_coeffs");
    FluxCoefficients fc;
    fc.l = l;
    fc.r = r;
    // 1/L_k^2(k) is proportional to binom(l+r, l+k)^2; normalizing by the
    // sum of squares makes the proportionality constant irrelevant.
    Rational den(0);
    for (long nu = -l; nu <= r; ++nu) {
        const Rational b = binom(l + r, l + nu);
        den += b * b;
    }
    Rational total(0), moment(0);
    for (long k = -l; k <= r; ++k) {
        const Rational b = binom(l + r, l + k);
        fc.c[k] = b * b / den;
        total += fc.c[k];
        moment += fc.c[k] * zeta(l, r, k);
    }
    if (total != 1 || moment != 0)
        throw std::logic_error("flux_coeffs: weight invariants failed");
    return fc;
}

TrigPoly hweno_trace(long l, long r) {
    const HermiteFundamentals f = hermite_fundamentals(l, r);
    const FluxCoefficients fc = flux_coeffs(l, r);
    Rational b0(0);
    for (const auto& [k, v] : f.g2pp) b0 += v;
    // Trace weights w_k on e^{ik theta} - 1; the -1 parts pile up on the
    // zeroth harmonic (they cancel exactly, but that is a theorem about the
    // weights, not something this assembly step should assume).
    TrigPoly re;
    Rational shift(0);
    for (long k = -l; k <= r; ++k) {
        const Rational w_k =
            Rational(2) * fc.c.at(k) * f.lprime.at(k) + f.g2pp.at(k) - fc.c.at(k) * b0;
        re.add_cos(k, w_k);
        shift += w_k;
    }
    re.add_cos(0, -shift);
    return re;
}

HwenoVerdict hweno_classify(long l, long r) {
    HwenoVerdict v;
    const Poly p = to_cos_poly(hweno_trace(l, r));
    std::optional<Rational> witness;
    if (!nonneg_on_closed(p, Rational(-1), Rational(1), &witness)) {
        v.status = HwenoStatus::Unstable;
        v.witness_x = witness;
    }
    return v;
}

std::array<std::array<std::complex<double>, 2>, 2> hweno_semidiscrete_matrix(
    long l, long r, double theta) {
    if (!(theta >= 0.0 && theta <= 2.0 * std::numbers::pi))
        throw std::domain_error("hweno_semidiscrete_matrix: theta outside [0, 2 pi]");
    const HermiteFundamentals f = hermite_fundamentals(l, r);
    const FluxCoefficients fc = flux_coeffs(l, r);
    Rational b0_exact(0);
    for (const auto& [k, v] : f.g2pp) b0_exact += v;
    const double b0 = b0_exact.get_d();

    std::array<std::array<std::complex<double>, 2>, 2> m{};
    const std::complex<double> iu(0.0, 1.0);
    for (long k = -l; k <= r; ++k) {
        const double ck = fc.c.at(k).get_d();
        const double zk = f.lprime.at(k).get_d();
        const double dak = f.h2pp.at(k).get_d();
        const double bk = f.g2pp.at(k).get_d();
        const std::complex<double> e =
            std::exp(iu * (theta * static_cast<double>(k))) - 1.0;
        m[0][0] += 2.0 * ck * zk * e;
        m[0][1] += -iu * theta * ck * e;
        const std::complex<double> ramp =
            theta == 0.0 ? std::complex<double>(static_cast<double>(k), 0.0)
                         : e / (iu * theta);
        m[1][0] += (dak + 2.0 * ck * zk * b0) * ramp;
        m[1][1] += (bk - ck * b0) * e;
    }
    return m;
}

}  // namespace hvstab
