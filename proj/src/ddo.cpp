#include <hvstab/ddo.hpp>

#include <hvstab/linalg.hpp>
#include <hvstab/numbers.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace hvstab {

Stencil stencil_from_LR(long L, long R) {
    if (L < 0 || R < 0) throw std::domain_error("stencil_from_LR: negative point count");
    if (L == 0 && R == 0) throw std::domain_error("stencil_from_LR: empty stencil");
    Stencil s;
    s.L = L;
    s.R = R;
    s.l_prime = L / 2;
    s.l = L - s.l_prime;
    s.r_prime = R / 2;
    s.r = R - s.r_prime;
    return s;
}

Stencil stencil_from_indices(long l, long r, long l_prime, long r_prime) {
    if (l < 0 || r < 0 || l_prime < 0 || r_prime < 0)
        throw std::domain_error("stencil_from_indices: negative count");
    if (l + r + l_prime + r_prime == 0)
        throw std::domain_error("stencil_from_indices: empty stencil");
    Stencil s;
    s.l = l;
    s.r = r;
    s.l_prime = l_prime;
    s.r_prime = r_prime;
    s.L = l + l_prime;
    s.R = r + r_prime;
    return s;
}

std::map<long, Rational> closed_beta(long l, long r, long l_prime, long r_prime) {
    std::map<long, Rational> beta;
    beta[0] = Rational(2) * (zeta(l, r, 0) + zeta(l_prime, r_prime, 0));
    for (long v = -l_prime; v <= r_prime; ++v) {
        if (v == 0) continue;
        beta[v] = make_rational(-2, v) * cmn(l, r, v) * cmn(l_prime, r_prime, v);
    }
    return beta;
}

namespace {

std::map<long, Rational> closed_alpha(long l, long r, long l_prime, long r_prime) {
    std::map<long, Rational> alpha;
    auto summand = [&](long k) -> Rational {
        return make_rational(2, k * k) *
               (Rational(1) + Rational(k) * (zeta(l, r, k) + zeta(l_prime, r_prime, k))) *
               cmn(l, r, k) * cmn(l_prime, r_prime, k);
    };
    for (long v = -l; v <= -1; ++v) {
        Rational s(0);
        if (l != l_prime) s -= make_rational(2, l * l) * cmn(l, r, -l) * cmn(l, r_prime, -l);
        for (long k = -l_prime; k <= v; ++k) s -= summand(k);
        alpha[v] = s;
    }
    for (long v = 0; v <= r - 1; ++v) {
        Rational s(0);
        if (r != r_prime) s += make_rational(2, r * r) * cmn(l, r, r) * cmn(l_prime, r, r);
        for (long k = v + 1; k <= r_prime; ++k) s += summand(k);
        alpha[v] = s;
    }
    return alpha;
}

// Exact image of the operator applied to x^q at node 0, unit spacing: cells
// contribute the integral mean of x^q over [k, k+1], nodes the value k^q.
Rational cell_image(long q, long k) {
    return make_rational(int_pow(k + 1, static_cast<unsigned long>(q + 1)) -
                             int_pow(k, static_cast<unsigned long>(q + 1)),
                         Integer(q + 1));
}

Rational node_image(long q, long k) {
    if (q == 0) return Rational(1);  // includes 0^0
    return Rational(int_pow(k, static_cast<unsigned long>(q)));
}

Rational residual(const DDOCoefficients& d, long q) {
    Rational res(0);
    for (const auto& [k, v] : d.alpha) res += v * cell_image(q, k);
    for (const auto& [k, v] : d.beta) res += v * node_image(q, k);
    if (q == 1) res -= 1;
    return res;
}

}  // namespace

DDOCoefficients build_ddo(const Stencil& s) {
    // The closed cell-weight sums are only valid near the canonical split;
    // wider gaps (they occur in some of the analysis stencils) fall back to
    // the order-condition solve, which covers every quadruple.
    long dl = s.l - s.l_prime, dr = s.r - s.r_prime;
    if (dl < 0 || dl > 1 || dr < 0 || dr > 1) return build_ddo_oracle(s);
    DDOCoefficients d;
    d.alpha = closed_alpha(s.l, s.r, s.l_prime, s.r_prime);
    d.beta = closed_beta(s.l, s.r, s.l_prime, s.r_prime);
    d.order = s.order();
    return d;
}

DDOCoefficients build_ddo_oracle(const Stencil& s) {
    const long p = s.order();
    const size_t n = static_cast<size_t>(p + 1);
    // Unknowns: alpha_{-l..r-1}, then beta_{-l'..r'}; one row per monomial.
    std::vector<std::pair<bool, long>> cols;  // (is_cell, k)
    for (long k = -s.l; k <= s.r - 1; ++k) cols.emplace_back(true, k);
    for (long k = -s.l_prime; k <= s.r_prime; ++k) cols.emplace_back(false, k);
    if (cols.size() != n) throw std::logic_error("build_ddo_oracle: stencil/order mismatch");

    std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(n, Rational(0));
    for (long q = 0; q < static_cast<long>(n); ++q) {
        for (size_t j = 0; j < n; ++j) {
            const auto& [is_cell, k] = cols[j];
            A[static_cast<size_t>(q)][j] = is_cell ? cell_image(q, k) : node_image(q, k);
        }
        if (q == 1) b[static_cast<size_t>(q)] = Rational(1);
    }

    std::vector<Rational> sol;
    try {
        sol = solve_linear(std::move(A), std::move(b));
    } catch (const std::domain_error&) {
        throw std::logic_error("build_ddo_oracle: order conditions are singular");
    }

    DDOCoefficients d;
    d.order = p;
    for (size_t j = 0; j < n; ++j) {
        const auto& [is_cell, k] = cols[j];
        (is_cell ? d.alpha : d.beta)[k] = sol[j];
    }
    return d;
}

SchemeSymbols symbols(const DDOCoefficients& d) {
    SchemeSymbols sym;
    std::tie(sym.H_re, sym.H_im) = split_complex(d.beta);
    std::tie(sym.G_re, sym.G_im) = split_complex(d.alpha);
    // F = (e^{i theta} - 1) G with e^{i theta} - 1 = (cos theta - 1) + i sin theta.
    TrigPoly c_minus_one, s;
    c_minus_one.add_cos(1, Rational(1));
    c_minus_one.add_cos(0, Rational(-1));
    s.add_sin(1, Rational(1));
    sym.F_re = trig_mul(c_minus_one, sym.G_re) - trig_mul(s, sym.G_im);
    sym.F_im = trig_mul(c_minus_one, sym.G_im) + trig_mul(s, sym.G_re);
    return sym;
}

TruncationReport truncation_order(const DDOCoefficients& d) {
    const long cap = 4 * static_cast<long>(d.alpha.size() + d.beta.size()) + 8;
    for (long q = 0; q <= cap; ++q) {
        Rational res = residual(d, q);
        if (sgn(res) != 0) {
            if (q == 0) throw std::domain_error("truncation_order: operator is inconsistent");
            TruncationReport report;
            report.order = q - 1;
            report.c_p = res / Rational(factorial(q));
            return report;
        }
    }
    throw std::logic_error("truncation_order: no error term found below the cap");
}

}  // namespace hvstab
