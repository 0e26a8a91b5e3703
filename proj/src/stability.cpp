#include <hvstab/stability.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hvstab {

ConditionPolys condition_polys(const SchemeSymbols& sym) {
    // Trace condition: ReH itself.
    if (!sym.H_re.sin_part_empty())
        throw std::logic_error("condition_polys: ReH carries a sin part");

    // Second condition: ReH * Re(conj(H) F) + (ImF)^2, assembled in theta.
    TrigPoly re_hbar_f =
        trig_mul(sym.H_re, sym.F_re) + trig_mul(sym.H_im, sym.F_im);
    TrigPoly second =
        trig_mul(sym.H_re, re_hbar_f) + trig_mul(sym.F_im, sym.F_im);
    if (!second.sin_part_empty())
        throw std::logic_error("condition_polys: second condition carries a sin part");

    ConditionPolys out;
    auto [ph, mh] = divide_out_one_minus_x(to_cos_poly(sym.H_re));
    auto [ps, ms] = divide_out_one_minus_x(to_cos_poly(second));
    out.P_H = std::move(ph);
    out.mult_H = mh;
    out.P_S = std::move(ps);
    out.mult_S = ms;
    if (out.mult_S < 1 && !out.P_S.is_zero())
        throw std::logic_error("condition_polys: second condition misses its theta=0 root");
    return out;
}

namespace {

const Rational kLo(-1), kHi(1);

// A cos-theta value in [-1, 1) where the required strict sign fails for p:
// a tangential zero when that is the only failure, otherwise an interior
// point of the offending sign region.
std::pair<Rational, WitnessKind> violation_witness(const Poly& p, const SignReport& report,
                                                   int required_sign) {
    if (report.sign == IntervalSign::IdenticallyZero)
        return {Rational(0), WitnessKind::TouchZero};
    if (report.sign == IntervalSign::Mixed &&
        report.witness_kind == WitnessKind::TouchZero)
        return {*report.witness, WitnessKind::TouchZero};
    // Strictly wrong-signed, or mixed with genuine sign changes: sample the
    // sign that breaks the requirement.
    return {sample_with_sign(p, kLo, kHi, -required_sign), WitnessKind::SignChange};
}

}  // namespace

StabilityVerdict classify(const Stencil& s) {
    StabilityVerdict v;
    v.conditions = condition_polys(symbols(build_ddo(s)));

    SignReport trace = sign_on_interval(v.conditions.P_H, kLo, kHi, true);
    if (trace.sign != IntervalSign::StrictlyPositive) {
        v.status = StabilityStatus::UnstableTraceViolated;
        std::tie(v.witness_theta, v.witness_kind) =
            violation_witness(v.conditions.P_H, trace, +1);
        return v;
    }

    SignReport second = sign_on_interval(v.conditions.P_S, kLo, kHi, true);
    if (second.sign != IntervalSign::StrictlyNegative) {
        v.status = StabilityStatus::UnstableTracePositive;
        std::tie(v.witness_theta, v.witness_kind) =
            violation_witness(v.conditions.P_S, second, -1);
        return v;
    }

    v.status = StabilityStatus::Stable;
    return v;
}

std::vector<TableEntry> stability_table(long max_L, bool parallel) {
    if (max_L < 1) throw std::domain_error("stability_table: max_L must be >= 1");
    std::vector<TableEntry> cells;
    for (long L = 1; L <= max_L; ++L)
        for (long R = 0; R < L; ++R) cells.push_back({L, R, {}});

    std::string first_error;
    const long n = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < n; ++i) {
        try {
            cells[static_cast<size_t>(i)].verdict =
                classify(stencil_from_LR(cells[static_cast<size_t>(i)].L,
                                         cells[static_cast<size_t>(i)].R));
        } catch (const std::exception& e) {
#pragma omp critical
            if (first_error.empty()) first_error = e.what();
        }
    }
    if (!first_error.empty())
        throw std::logic_error("stability_table: " + first_error);
    return cells;
}

CoefficientBoundReport coefficient_bound_check(const TrigPoly& c) {
    if (!c.sin_part_empty())
        throw std::domain_error("coefficient_bound_check requires a cosine-only input");
    CoefficientBoundReport report;
    Rational bound = Rational(2) * c.cos_coeff(0);
    for (const auto& [k, v] : c.cos_coeffs) {
        if (k == 0) continue;
        if (abs(v) >= bound) {
            report.passes = false;
            report.failing_k = k;
            return report;
        }
    }
    return report;
}

bool BarrierBound::admits(long L) const {
    long d = L - R;
    if (d >= linear) return false;
    if (d <= 9) return true;
    return (d - 9) * (d - 9) < 21 * R + 49;
}

BarrierBound barrier_bound(long R) {
    if (R < 0) throw std::domain_error("barrier_bound: R must be non-negative");
    BarrierBound b;
    b.R = R;
    b.linear = 2 * R + 7;
    // Largest d with d^2... the sqrt branch admits d <= 9 + floor(sqrt(21R + 48)),
    // since (d - 9)^2 < 21R + 49 for positive d - 9 means d - 9 <= isqrt(21R + 48).
    Integer s(21 * R + 48);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), s.get_mpz_t());
    long sqrt_gap = 9 + root.get_si();
    b.max_admissible_gap = std::min(b.linear - 1, sqrt_gap);
    // The linear branch is the binding (smaller) one exactly when
    // 2R - 2 <= sqrt(21R + 49), i.e. (2R - 2)^2 <= 21R + 49 for R >= 1.
    b.linear_branch_binding =
        R <= 1 || (2 * R - 2) * (2 * R - 2) <= 21 * R + 49;
    return b;
}

std::vector<std::pair<double, double>> eigen_sweep(const SchemeSymbols& sym,
                                                   long n_samples) {
    if (n_samples < 2) throw std::domain_error("eigen_sweep: need at least two samples");
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<size_t>(n_samples));
    const double two_pi = 2.0 * std::acos(-1.0);
    for (long j = 1; j <= n_samples; ++j) {
        double theta = two_pi * static_cast<double>(j) /
                       static_cast<double>(n_samples + 1);
        std::complex<double> H(sym.H_re.eval(theta), sym.H_im.eval(theta));
        std::complex<double> F(sym.F_re.eval(theta), sym.F_im.eval(theta));
        std::complex<double> disc = std::sqrt(H * H + 4.0 * F);
        double re1 = ((H + disc) / 2.0).real();
        double re2 = ((H - disc) / 2.0).real();
        out.emplace_back(theta, std::min(re1, re2));
    }
    return out;
}

}  // namespace hvstab
