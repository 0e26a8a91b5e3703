#include <hvstab/poly.hpp>

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace hvstab {

namespace {

void normalize(std::vector<Rational>& c) {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
}

}  // namespace

Poly::Poly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { normalize(c); }

const Rational& Poly::leading() const {
    if (c.empty()) throw std::logic_error("leading coefficient of the zero polynomial");
    return c.back();
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->get_d();
    return acc;
}

Poly poly_from_longs(std::initializer_list<long> coeffs) {
    std::vector<Rational> c;
    c.reserve(coeffs.size());
    for (long v : coeffs) c.emplace_back(v);
    return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] += b.c[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> c(std::max(a.c.size(), b.c.size()), Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) c[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) c[i] -= b.c[i];
    return Poly(std::move(c));
}

Poly operator-(const Poly& a) {
    std::vector<Rational> c = a.c;
    for (auto& v : c) v = -v;
    return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> c(a.c.size() + b.c.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) c[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(c));
}

Poly operator*(const Rational& s, const Poly& a) {
    if (sgn(s) == 0) return Poly();
    std::vector<Rational> c = a.c;
    for (auto& v : c) v *= s;
    return Poly(std::move(c));
}

Poly derivative(const Poly& p) {
    if (p.c.size() <= 1) return Poly();
    std::vector<Rational> c(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) c[i - 1] = Rational(static_cast<long>(i)) * p.c[i];
    return Poly(std::move(c));
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.c;
    if (rem.size() < b.c.size()) return {Poly(), Poly(std::move(rem))};
    std::vector<Rational> quot(rem.size() - b.c.size() + 1, Rational(0));
    const Rational& lead = b.leading();
    for (long i = static_cast<long>(rem.size()) - 1;
         i >= static_cast<long>(b.c.size()) - 1; --i) {
        if (sgn(rem[static_cast<size_t>(i)]) == 0) continue;
        Rational f = rem[static_cast<size_t>(i)] / lead;
        long shift = i - (static_cast<long>(b.c.size()) - 1);
        quot[static_cast<size_t>(shift)] = f;
        for (size_t j = 0; j < b.c.size(); ++j)
            rem[static_cast<size_t>(shift) + j] -= f * b.c[j];
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

namespace {

// Scale to leading coefficient 1; keeps Euclidean remainders from blowing up.
Poly monic(Poly p) {
    if (p.is_zero()) return p;
    Rational inv = Rational(1) / p.leading();
    for (auto& v : p.c) v *= inv;
    return p;
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = divrem(a, b).second;
        a = std::move(b);
        b = monic(std::move(r));
    }
    return monic(std::move(a));
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero() || p.degree() == 0) return p;
    Poly g = poly_gcd(p, derivative(p));
    if (g.degree() == 0) return p;
    auto [q, r] = divrem(p, g);
    if (!r.is_zero()) throw std::logic_error("squarefree division left a remainder");
    return q;
}

std::pair<Poly, int> divide_out_one_minus_x(Poly p) {
    int mult = 0;
    const Poly one_minus_x = poly_from_longs({1, -1});
    while (!p.is_zero() && sgn(p.eval(Rational(1))) == 0) {
        auto [q, r] = divrem(p, one_minus_x);
        if (!r.is_zero()) throw std::logic_error("factor extraction left a remainder");
        p = std::move(q);
        ++mult;
    }
    return {std::move(p), mult};
}

namespace {

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(p);
    chain.push_back(derivative(p));
    while (!chain.back().is_zero()) {
        Poly r = -divrem(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        // Positive rescaling preserves every sign evaluation.
        Rational inv = Rational(1) / abs(r.leading());
        for (auto& v : r.c) v *= inv;
        chain.push_back(std::move(r));
    }
    return chain;
}

// Sign variations with zeros skipped. With that convention V is
// right-continuous across roots, so V(x) - V(y) counts the roots in the
// half-open interval (x, y] even when x or y is itself a root.
long sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    long count = 0;
    int prev = 0;
    for (const Poly& q : chain) {
        int s = sgn(q.eval(x));
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

// A root of the squarefree polynomial, either hit exactly during bisection or
// trapped in an open isolating interval whose endpoints are not roots.
struct IsolatedRoot {
    bool exact = false;
    Rational point;   // the root itself when exact
    Rational lo, hi;  // isolating interval otherwise
    [[nodiscard]] Rational locator() const { return exact ? point : (lo + hi) / 2; }
};

constexpr long kIsolationWidthDen = 1024;

// Bisect (lo, hi) — both endpoints guaranteed non-roots of q — until every
// root of q sits alone in an interval of width < 1/1024 that stays strictly
// inside the original range (a0, b0), so the root-free segments between
// isolating intervals all have nonempty interiors.
void isolate_range(const Poly& q, const std::vector<Poly>& chain, const Rational& lo,
                   const Rational& hi, const Rational& a0, const Rational& b0,
                   std::vector<IsolatedRoot>& out) {
    long n = sign_variations(chain, lo) - sign_variations(chain, hi);
    if (n <= 0) return;
    Rational width = hi - lo;
    if (n == 1 && width * kIsolationWidthDen < 1 && lo != a0 && hi != b0) {
        out.push_back({false, Rational(0), lo, hi});
        return;
    }
    Rational mid = (lo + hi) / 2;
    if (sgn(q.eval(mid)) == 0) {
        // Exact rational root at the midpoint: emit it, then resume on both
        // sides of a neighborhood small enough to contain no other root.
        Rational eps = width / 4;
        auto roots_between = [&](const Rational& x, const Rational& y) {
            return sign_variations(chain, x) - sign_variations(chain, y);
        };
        while (sgn(q.eval(mid - eps)) == 0 || sgn(q.eval(mid + eps)) == 0 ||
               roots_between(mid - eps, mid + eps) > 1) {
            eps /= 2;
        }
        isolate_range(q, chain, lo, mid - eps, a0, b0, out);
        out.push_back({true, mid, mid, mid});
        isolate_range(q, chain, mid + eps, hi, a0, b0, out);
        return;
    }
    isolate_range(q, chain, lo, mid, a0, b0, out);
    isolate_range(q, chain, mid, hi, a0, b0, out);
}

// Root/segment decomposition of [lo, hi]: the roots of q (the squarefree part
// of p) strictly inside, in increasing order, plus the constant sign of p on
// each root-free segment between them with one interior rational sample per
// segment. p and q share their root set, so the sign of p is constant on
// (lo, roots[0]), between consecutive roots, and on (roots[last], hi); the
// endpoints themselves are the callers' concern.
struct SegmentScan {
    Rational a, b;  // working range after shrinking past endpoint roots
    std::vector<IsolatedRoot> roots;
    std::vector<int> segment_signs;         // size roots.size() + 1
    std::vector<Rational> segment_samples;  // matching interior sample points
};

SegmentScan scan_segments(const Poly& p, const Poly& q, const Rational& lo,
                          const Rational& hi) {
    SegmentScan scan;
    std::vector<Poly> chain = sturm_chain(q);
    auto roots_in = [&](const Rational& x, const Rational& y) {  // count on (x, y]
        return sign_variations(chain, x) - sign_variations(chain, y);
    };

    // Shrink inward past endpoint roots so the isolation range has non-root
    // ends; keep (lo, a] and [b, hi) free of further roots so nothing hides.
    Rational a = lo;
    if (sgn(q.eval(a)) == 0) {
        Rational d = (hi - lo) / 4;
        a = lo + d;
        while (sgn(q.eval(a)) == 0 || roots_in(lo, a) > 0) {
            d /= 2;
            a = lo + d;
        }
    }
    Rational b = hi;
    if (sgn(q.eval(b)) == 0) {
        Rational d = (hi - lo) / 4;
        b = hi - d;
        while (sgn(q.eval(b)) == 0 || roots_in(b, hi) > 1) {
            d /= 2;
            b = hi - d;
        }
    }
    scan.a = a;
    scan.b = b;
    isolate_range(q, chain, a, b, a, b, scan.roots);

    // One sample per root-free segment. Segment boundaries are the working
    // endpoints and the isolating-interval edges (or exact root points), so
    // every midpoint lands strictly inside a root-free stretch.
    std::vector<Rational> cuts;
    cuts.push_back(a);
    for (const IsolatedRoot& r : scan.roots) {
        cuts.push_back(r.exact ? r.point : r.lo);
        cuts.push_back(r.exact ? r.point : r.hi);
    }
    cuts.push_back(b);
    for (size_t i = 0; i + 1 < cuts.size(); i += 2) {
        Rational sample = (cuts[i] + cuts[i + 1]) / 2;
        int s = sgn(p.eval(sample));
        if (s == 0) throw std::logic_error("segment sample hit a root");
        scan.segment_signs.push_back(s);
        scan.segment_samples.push_back(sample);
    }
    return scan;
}

}  // namespace

long count_roots(const Poly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw std::domain_error("root count of the zero polynomial");
    if (lo > hi) throw std::domain_error("count_roots needs lo <= hi");
    Poly q = squarefree_part(p);
    if (lo == hi) return sgn(q.eval(lo)) == 0 ? 1 : 0;
    std::vector<Poly> chain = sturm_chain(q);
    long n = sign_variations(chain, lo) - sign_variations(chain, hi);
    if (sgn(q.eval(lo)) == 0) ++n;  // (lo, hi] count -> closed [lo, hi]
    return n;
}

SignReport sign_on_interval(const Poly& p, const Rational& lo, const Rational& hi,
                            bool open_at_hi) {
    if (lo >= hi) throw std::domain_error("sign_on_interval needs lo < hi");
    SignReport report;
    if (p.is_zero()) {
        report.sign = IntervalSign::IdenticallyZero;
        return report;
    }
    if (p.degree() == 0) {
        report.sign = sgn(p.c[0]) > 0 ? IntervalSign::StrictlyPositive
                                      : IntervalSign::StrictlyNegative;
        return report;
    }

    Poly q = squarefree_part(p);
    SegmentScan scan = scan_segments(p, q, lo, hi);

    int sign_lo = sgn(p.eval(lo));
    int sign_hi = sgn(p.eval(hi));
    bool hi_zero_counts = !open_at_hi && sign_hi == 0;

    bool has_positive = false, has_negative = false;
    for (int s : scan.segment_signs) (s > 0 ? has_positive : has_negative) = true;
    bool touches_zero = sign_lo == 0 || !scan.roots.empty() || hi_zero_counts;

    if (!touches_zero) {
        report.sign = has_positive ? IntervalSign::StrictlyPositive
                                   : IntervalSign::StrictlyNegative;
        return report;
    }

    report.sign = IntervalSign::Mixed;
    if (has_positive && has_negative) {
        // Sign changes: the witness takes the minority sign by measure. Root
        // locators are exact to within 1/1024, far finer than any region of
        // interest, so segment lengths measured between locators settle the
        // majority.
        std::vector<Rational> marks;
        marks.push_back(lo);
        for (const IsolatedRoot& r : scan.roots) marks.push_back(r.locator());
        marks.push_back(hi);
        Rational len_pos(0), len_neg(0);
        for (size_t i = 0; i < scan.segment_signs.size(); ++i) {
            Rational len = marks[i + 1] - marks[i];
            (scan.segment_signs[i] > 0 ? len_pos : len_neg) += len;
        }
        int majority = len_pos >= len_neg ? 1 : -1;
        for (size_t i = 0; i < scan.segment_signs.size(); ++i) {
            if (scan.segment_signs[i] != majority) {
                report.witness = scan.segment_samples[i];
                report.witness_kind = WitnessKind::SignChange;
                break;
            }
        }
        return report;
    }

    // One sign plus isolated zeros: report where the strictness fails.
    report.witness_kind = WitnessKind::TouchZero;
    if (sign_lo == 0) report.witness = lo;
    else if (!scan.roots.empty()) report.witness = scan.roots.front().locator();
    else report.witness = hi;
    return report;
}

Rational sample_with_sign(const Poly& p, const Rational& lo, const Rational& hi,
                          int wanted) {
    if (wanted != 1 && wanted != -1)
        throw std::domain_error("sample_with_sign wants +1 or -1");
    if (lo >= hi) throw std::domain_error("sample_with_sign needs lo < hi");
    if (!p.is_zero() && p.degree() >= 1) {
        Poly q = squarefree_part(p);
        SegmentScan scan = scan_segments(p, q, lo, hi);
        // Prefer interior samples so callers needing an open-interval witness
        // never receive an endpoint when an interior point exists.
        for (size_t i = 0; i < scan.segment_signs.size(); ++i)
            if (scan.segment_signs[i] == wanted) return scan.segment_samples[i];
    }
    if (sgn(p.eval(lo)) == wanted) return lo;
    if (sgn(p.eval(hi)) == wanted) return hi;
    throw std::domain_error("polynomial never attains the requested sign on the interval");
}

bool nonneg_on_closed(const Poly& p, const Rational& lo, const Rational& hi,
                      std::optional<Rational>* witness) {
    if (p.is_zero()) return true;
    auto fail = [&](const Rational& x) {
        if (witness) *witness = x;
        return false;
    };
    if (sgn(p.eval(lo)) < 0) return fail(lo);
    if (sgn(p.eval(hi)) < 0) return fail(hi);
    if (p.degree() >= 1) {
        // Any negative region meets a root-free segment or an endpoint, so
        // checking the segment samples and the two endpoints is exhaustive.
        Poly q = squarefree_part(p);
        SegmentScan scan = scan_segments(p, q, lo, hi);
        for (size_t i = 0; i < scan.segment_signs.size(); ++i)
            if (scan.segment_signs[i] < 0) return fail(scan.segment_samples[i]);
    }
    return true;
}

}  // namespace hvstab
