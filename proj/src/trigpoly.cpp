#include <hvstab/trigpoly.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace hvstab {

namespace {

void accumulate(std::map<long, Rational>& m, long k, const Rational& v) {
    if (sgn(v) == 0) return;
    auto [it, inserted] = m.emplace(k, v);
    if (!inserted) {
        it->second += v;
        if (sgn(it->second) == 0) m.erase(it);
    }
}

}  // namespace

void TrigPoly::add_cos(long k, const Rational& v) {
    accumulate(cos_coeffs, std::labs(k), v);
}

void TrigPoly::add_sin(long k, const Rational& v) {
    if (k == 0) return;
    if (k < 0) accumulate(sin_coeffs, -k, -v);
    else accumulate(sin_coeffs, k, v);
}

long TrigPoly::degree() const {
    long d = 0;
    if (!cos_coeffs.empty()) d = std::max(d, cos_coeffs.rbegin()->first);
    if (!sin_coeffs.empty()) d = std::max(d, sin_coeffs.rbegin()->first);
    return d;
}

Rational TrigPoly::cos_coeff(long k) const {
    auto it = cos_coeffs.find(k);
    return it == cos_coeffs.end() ? Rational(0) : it->second;
}

Rational TrigPoly::sin_coeff(long k) const {
    auto it = sin_coeffs.find(k);
    return it == sin_coeffs.end() ? Rational(0) : it->second;
}

double TrigPoly::eval(double theta) const {
    double acc = 0.0;
    for (const auto& [k, v] : cos_coeffs) acc += v.get_d() * std::cos(k * theta);
    for (const auto& [k, v] : sin_coeffs) acc += v.get_d() * std::sin(k * theta);
    return acc;
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out = a;
    for (const auto& [k, v] : b.cos_coeffs) out.add_cos(k, v);
    for (const auto& [k, v] : b.sin_coeffs) out.add_sin(k, v);
    return out;
}

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out = a;
    for (const auto& [k, v] : b.cos_coeffs) out.add_cos(k, -v);
    for (const auto& [k, v] : b.sin_coeffs) out.add_sin(k, -v);
    return out;
}

TrigPoly operator-(const TrigPoly& a) {
    TrigPoly out;
    for (const auto& [k, v] : a.cos_coeffs) out.cos_coeffs.emplace(k, -v);
    for (const auto& [k, v] : a.sin_coeffs) out.sin_coeffs.emplace(k, -v);
    return out;
}

TrigPoly operator*(const Rational& s, const TrigPoly& a) {
    TrigPoly out;
    if (sgn(s) == 0) return out;
    for (const auto& [k, v] : a.cos_coeffs) out.cos_coeffs.emplace(k, s * v);
    for (const auto& [k, v] : a.sin_coeffs) out.sin_coeffs.emplace(k, s * v);
    return out;
}

TrigPoly trig_mul(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out;
    const Rational half(1, 2);
    for (const auto& [ka, va] : a.cos_coeffs) {
        for (const auto& [kb, vb] : b.cos_coeffs) {
            // cos A cos B = (cos(A-B) + cos(A+B)) / 2
            Rational v = half * va * vb;
            out.add_cos(ka - kb, v);
            out.add_cos(ka + kb, v);
        }
        for (const auto& [kb, vb] : b.sin_coeffs) {
            // cos A sin B = (sin(A+B) - sin(A-B)) / 2
            Rational v = half * va * vb;
            out.add_sin(ka + kb, v);
            out.add_sin(ka - kb, -v);
        }
    }
    for (const auto& [ka, va] : a.sin_coeffs) {
        for (const auto& [kb, vb] : b.cos_coeffs) {
            // sin A cos B = (sin(A+B) + sin(A-B)) / 2
            Rational v = half * va * vb;
            out.add_sin(ka + kb, v);
            out.add_sin(ka - kb, v);
        }
        for (const auto& [kb, vb] : b.sin_coeffs) {
            // sin A sin B = (cos(A-B) - cos(A+B)) / 2
            Rational v = half * va * vb;
            out.add_cos(ka - kb, v);
            out.add_cos(ka + kb, -v);
        }
    }
    return out;
}

TrigPoly derivative(const TrigPoly& t) {
    TrigPoly out;
    for (const auto& [k, v] : t.cos_coeffs) out.add_sin(k, Rational(-k) * v);
    for (const auto& [k, v] : t.sin_coeffs) out.add_cos(k, Rational(k) * v);
    return out;
}

std::pair<TrigPoly, TrigPoly> split_complex(const std::map<long, Rational>& coeffs) {
    TrigPoly re, im;
    for (const auto& [k, v] : coeffs) {
        re.add_cos(k, v);
        im.add_sin(k, v);
    }
    return {std::move(re), std::move(im)};
}

Poly to_cos_poly(const TrigPoly& t) {
    if (!t.sin_part_empty())
        throw std::domain_error("to_cos_poly requires an empty sin part");
    Poly acc;
    if (t.is_zero()) return acc;
    long max_k = t.cos_coeffs.rbegin()->first;
    Poly t_prev = poly_from_longs({1});    // T_0
    Poly t_cur = poly_from_longs({0, 1});  // T_1
    const Poly two_x = poly_from_longs({0, 2});
    for (long k = 0; k <= max_k; ++k) {
        const Poly& t_k = k == 0 ? t_prev : t_cur;
        Rational v = t.cos_coeff(k);
        if (sgn(v) != 0) acc = acc + v * t_k;
        if (k >= 1) {
            Poly t_next = two_x * t_cur - t_prev;
            t_prev = std::move(t_cur);
            t_cur = std::move(t_next);
        }
    }
    return acc;
}

Rational eval_at_pi(const TrigPoly& t) {
    Rational acc(0);
    for (const auto& [k, v] : t.cos_coeffs) {
        if (k % 2 == 0)
            acc += v;
        else
            acc -= v;
    }
    return acc;
}

}  // namespace hvstab
