#pragma once

#include <hvstab/trigpoly.hpp>

#include <map>

namespace hvstab {

// Four-index stencil of a hybrid-variable discrete differential operator:
// l cells and l' nodes to the left, r cells and r' nodes to the right, with
// the canonical split l' = floor(L/2), l = L - l' (and likewise for R).
struct Stencil {
    long L = 0, R = 0;
    long l = 0, r = 0, l_prime = 0, r_prime = 0;

    [[nodiscard]] long order() const { return L + R; }
};

// The canonical stencil for the point counts (L, R); rejects L = R = 0 and
// negative counts with std::domain_error.
Stencil stencil_from_LR(long L, long R);

// A stencil with all four counts given explicitly, not necessarily the
// canonical split; rejects negative counts and the empty stencil.
Stencil stencil_from_indices(long l, long r, long l_prime, long r_prime);

// Weights of the operator at unit spacing: alpha over cells k in [-l, r-1]
// (the cell between nodes k and k+1), beta over nodes k in [-l', r'].
struct DDOCoefficients {
    std::map<long, Rational> alpha;
    std::map<long, Rational> beta;
    long order = 0;  // L + R
};

// The unique optimal-order DDO: closed-form weights where the closed sums
// are valid (cell/node gaps l-l' and r-r' in {0,1}, which covers every
// canonical split), the exact order-condition solve for wider quadruples.
DDOCoefficients build_ddo(const Stencil& s);

// Independent construction: solves the (p+1)-square exact linear system of
// order conditions (operator reproduces d/dx on monomials of degree <= p,
// cells entering as integral means). A singular system signals a bug and
// raises std::logic_error.
DDOCoefficients build_ddo_oracle(const Stencil& s);

// The node weights beta for an arbitrary four-index stencil. The closed
// formula for beta covers every index combination, unlike the alpha sums,
// so downstream combinatorics can use it far outside the canonical split.
std::map<long, Rational> closed_beta(long l, long r, long l_prime, long r_prime);

// Fourier symbols at unit spacing: H over nodes, G over cells, and
// F = (e^{i theta} - 1) G, each split into real and imaginary trig parts.
struct SchemeSymbols {
    TrigPoly H_re, H_im, G_re, G_im, F_re, F_im;
};

SchemeSymbols symbols(const DDOCoefficients& d);

// Largest p with the operator exact on all polynomials of degree <= p, plus
// the leading error constant: applying the operator to smooth u at unit
// spacing leaves u'(0) + c_p * u^(p+1)(0).
struct TruncationReport {
    long order = 0;
    Rational c_p;
};

TruncationReport truncation_order(const DDOCoefficients& d);

}  // namespace hvstab
