#include <hvstab/orderstar.hpp>

#include <hvstab/linalg.hpp>
#include <hvstab/numbers.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace hvstab {

namespace {

constexpr double kSwitchRadius = 0.25;  // compensated evaluation inside
constexpr long kTailTop = 48;           // highest exact Taylor index kept

// Horner evaluation of z^start * (c[0] + c[1] z + ...) for the exact tails.
std::complex<double> tail_eval(const std::vector<double>& c, long start,
                               std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    for (long i = 0; i < start; ++i) acc *= z;
    return acc;
}

std::vector<std::pair<long, double>> to_float_weights(const std::map<long, Rational>& w) {
    std::vector<std::pair<long, double>> out;
    out.reserve(w.size());
    for (const auto& [k, v] : w) out.emplace_back(k, v.get_d());
    return out;
}

// Extracts the first nonzero index and the float tail from exact Taylor
// coefficients delivered one index at a time.
template <typename CoeffFn>
void build_tail(CoeffFn&& coeff, long min_start, std::vector<double>* tail,
                long* tail_start) {
    long start = -1;
    std::vector<Rational> exact;
    for (long n = 0; n <= kTailTop; ++n) {
        const Rational c = coeff(n);
        if (start < 0) {
            if (c == 0) continue;
            start = n;
        }
        exact.push_back(c);
    }
    if (start < min_start)
        throw std::logic_error("orderstar: symbol violates its consistency order");
    tail->clear();
    tail->reserve(exact.size());
    for (const Rational& c : exact) tail->push_back(c.get_d());
    *tail_start = start;
}

std::complex<double> cexp_sum(const std::vector<std::pair<long, double>>& w,
                              std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [k, a] : w) acc += a * std::exp(z * static_cast<double>(k));
    return acc;
}

// Unfolds a split symbol sum w_k e^{ik theta} back into its coefficient map.
std::map<long, Rational> unfold_coefficients(const TrigPoly& re, const TrigPoly& im) {
    std::map<long, Rational> out;
    auto touch = [&](long k, const Rational& v) {
        if (v != 0) out[k] += v;
    };
    touch(0, re.cos_coeff(0));
    long top = 0;
    if (!re.cos_coeffs.empty()) top = std::max(top, re.cos_coeffs.rbegin()->first);
    if (!im.sin_coeffs.empty()) top = std::max(top, im.sin_coeffs.rbegin()->first);
    for (long k = 1; k <= top; ++k) {
        const Rational c = re.cos_coeff(k), s = im.sin_coeff(k);
        touch(k, (c + s) / 2);
        touch(-k, (c - s) / 2);
    }
    return out;
}

struct SheetPair {
    std::complex<double> big, small;
    bool plus_is_big = true;  // whether (H + sqrt d)/2 - z is the big root
};

// Both sigma roots of sigma^2 + (2z - H) sigma + Q = 0. Away from the origin
// the quadratic formula on lambda is accurate; inside the switch radius the
// small (consistent) root comes from the exact tail of Q to sidestep the
// cancellation between the two O(1) terms of the formula.
SheetPair hv_sigma_pair(const HvSymbol& sym, std::complex<double> z) {
    const std::complex<double> h = cexp_sum(sym.beta, z);
    const std::complex<double> g = cexp_sum(sym.alpha, z);
    const std::complex<double> f = (std::exp(z) - 1.0) * g;
    const std::complex<double> sqd = std::sqrt(h * h + 4.0 * f);
    SheetPair out;
    if (std::abs(z) >= kSwitchRadius) {
        const std::complex<double> sp = (h + sqd) * 0.5 - z;
        const std::complex<double> sm = (h - sqd) * 0.5 - z;
        const bool plus_big = std::abs(sp) >= std::abs(sm);
        out.big = plus_big ? sp : sm;
        out.small = plus_big ? sm : sp;
        out.plus_is_big = plus_big;
        return out;
    }
    const std::complex<double> w = h - 2.0 * z;
    const bool plus_big = w.real() * sqd.real() + w.imag() * sqd.imag() >= 0.0;
    out.big = plus_big ? (w + sqd) * 0.5 : (w - sqd) * 0.5;
    out.plus_is_big = plus_big;
    // Both roots collapse to zero only where Q and its cofactor vanish
    // together (the origin of a balanced scheme); the product formula then
    // degenerates to 0/0 and the small root is exactly zero anyway.
    out.small = out.big == 0.0 ? 0.0 : tail_eval(sym.qtail, sym.tail_start, z) / out.big;
    return out;
}

}  // namespace

double GridSpec::x(long ix) const {
    return x_min + (x_max - x_min) * static_cast<double>(ix) / static_cast<double>(nx - 1);
}

double GridSpec::y(long iy) const {
    constexpr double pi = std::numbers::pi;
    return -pi + 2.0 * pi * static_cast<double>(iy) / static_cast<double>(ny - 1);
}

GridSpec make_grid(double x_min, double x_max, long nx, long ny) {
    if (!(x_min < x_max)) throw std::domain_error("orderstar: window needs x_min < x_max");
    if (nx < 2 || ny < 2) throw std::domain_error("orderstar: need at least 2x2 samples");
    return GridSpec{x_min, x_max, nx, ny};
}

std::map<long, Rational> fdm_weights(long l, long r) {
    if (l < 0 || r < 0 || l + r < 1)
        throw std::domain_error("fdm_weights: need l, r >= 0 with l + r >= 1");
    const long n = l + r + 1;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (long j = 0; j < n; ++j) {
        for (long i = 0; i < n; ++i)
            a[j][i] = Rational(int_pow(i - l, static_cast<unsigned long>(j)));
        rhs[j] = Rational(j == 1 ? 1 : 0);
    }
    const std::vector<Rational> sol = solve_linear(std::move(a), std::move(rhs));
    std::map<long, Rational> out;
    for (long i = 0; i < n; ++i) out[i - l] = sol[static_cast<std::size_t>(i)];
    return out;
}

FdmSymbol prepare_fdm(const std::map<long, Rational>& weights) {
    FdmSymbol sym;
    sym.weights = to_float_weights(weights);
    // sigma = sum a_k e^{kz} - z has Taylor coefficient sum a_k k^n / n! at
    // n != 1 and sum a_k k - 1 at n = 1; the order conditions zero the first
    // p+1 of them.
    build_tail(
        [&](long n) {
            Rational c(0);
            for (const auto& [k, v] : weights) c += v * Rational(int_pow(k, static_cast<unsigned long>(n)));
            c /= Rational(factorial(n));
            if (n == 1) c -= 1;
            return c;
        },
        2, &sym.tail, &sym.tail_start);
    return sym;
}

std::complex<double> fdm_sigma(const FdmSymbol& sym, std::complex<double> z) {
    if (std::abs(z) >= kSwitchRadius) return cexp_sum(sym.weights, z) - z;
    return tail_eval(sym.tail, sym.tail_start, z);
}

HvSymbol prepare_hv(const SchemeSymbols& sym) {
    const std::map<long, Rational> alpha = unfold_coefficients(sym.G_re, sym.G_im);
    const std::map<long, Rational> beta = unfold_coefficients(sym.H_re, sym.H_im);
    HvSymbol out;
    out.alpha = to_float_weights(alpha);
    out.beta = to_float_weights(beta);
    // Q(z) = z^2 - H z - F collects [n==2] - B_{n-1} - A_n, with node moments
    // B_n = sum beta_k k^n / n! and cell moments A_n picking up the (e^z - 1)
    // factor as ((k+1)^n - k^n) / n!.
    build_tail(
        [&](long n) {
            Rational c(n == 2 ? 1 : 0);
            const Rational nfac(factorial(n));
            if (n >= 1) {
                const Rational n1fac(factorial(n - 1));
                for (const auto& [k, v] : beta)
                    c -= v * Rational(int_pow(k, static_cast<unsigned long>(n - 1))) / n1fac;
            }
            for (const auto& [k, v] : alpha)
                c -= v *
                     Rational(int_pow(k + 1, static_cast<unsigned long>(n)) -
                              int_pow(k, static_cast<unsigned long>(n))) /
                     nfac;
            return c;
        },
        3, &out.qtail, &out.tail_start);
    return out;
}

HvSigma hv_sigma(const HvSymbol& sym, std::complex<double> z) {
    const SheetPair pair = hv_sigma_pair(sym, z);
    HvSigma out;
    out.principal_plus = pair.plus_is_big ? pair.big : pair.small;
    out.principal_minus = pair.plus_is_big ? pair.small : pair.big;
    out.consistent = pair.small;
    return out;
}

std::complex<double> hv_discriminant(const HvSymbol& sym, std::complex<double> z) {
    const std::complex<double> h = cexp_sum(sym.beta, z);
    const std::complex<double> g = cexp_sum(sym.alpha, z);
    return h * h + 4.0 * (std::exp(z) - 1.0) * g;
}

std::complex<double> hv_discriminant_derivative(const HvSymbol& sym, std::complex<double> z) {
    std::complex<double> h(0.0, 0.0), hp(0.0, 0.0), g(0.0, 0.0), gp(0.0, 0.0);
    for (const auto& [k, a] : sym.beta) {
        const std::complex<double> e = a * std::exp(z * static_cast<double>(k));
        h += e;
        hp += static_cast<double>(k) * e;
    }
    for (const auto& [k, a] : sym.alpha) {
        const std::complex<double> e = a * std::exp(z * static_cast<double>(k));
        g += e;
        gp += static_cast<double>(k) * e;
    }
    const std::complex<double> ez = std::exp(z);
    return 2.0 * h * hp + 4.0 * (ez * g + (ez - 1.0) * gp);
}

std::optional<std::complex<double>> refine_branch_point(const HvSymbol& sym,
                                                        std::complex<double> seed) {
    std::complex<double> z = seed;
    for (int iter = 0; iter < 50; ++iter) {
        const std::complex<double> d = hv_discriminant(sym, z);
        const std::complex<double> dp = hv_discriminant_derivative(sym, z);
        if (dp == 0.0) break;
        const std::complex<double> step = d / dp;
        z -= step;
        if (std::abs(step) < 1e-12) break;
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
    if (std::abs(hv_discriminant(sym, z)) >= 1e-8) return std::nullopt;
    return z;
}

namespace {

// Newton-refines every grid-local minimum of |d| below the seed threshold.
// Each seed is also retried from four half-cell perturbations: a pair of
// branch points straddling a grid line (conjugate pairs hug the real axis)
// shares one saddle-shaped minimum, and only displaced starts fall off the
// saddle toward the individual roots. All accepted landings are kept and
// deduplicated, then clipped to the window.
std::vector<std::complex<double>> find_branch_points(const HvSymbol& sym,
                                                     const GridSpec& spec,
                                                     const std::vector<double>& dmag) {
    constexpr double kSeedThreshold = 1e-2;
    const long nx = spec.nx, ny = spec.ny;
    const double eps = 0.5 * std::min((spec.x_max - spec.x_min) / static_cast<double>(nx - 1),
                                      2.0 * std::numbers::pi / static_cast<double>(ny - 1));
    std::vector<std::complex<double>> found;
    for (long iy = 1; iy + 1 < ny; ++iy) {
        for (long ix = 1; ix + 1 < nx; ++ix) {
            const double v = dmag[static_cast<std::size_t>(iy) * nx + ix];
            if (v >= kSeedThreshold) continue;
            bool is_min = true;
            for (long dy = -1; dy <= 1 && is_min; ++dy)
                for (long dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    if (dmag[static_cast<std::size_t>(iy + dy) * nx + (ix + dx)] < v) {
                        is_min = false;
                        break;
                    }
                }
            if (!is_min) continue;
            const std::complex<double> seed(spec.x(ix), spec.y(iy));
            const std::complex<double> shifts[] = {{0.0, 0.0}, {0.0, eps}, {0.0, -eps},
                                                   {eps, 0.0}, {-eps, 0.0}};
            for (const std::complex<double>& s : shifts)
                if (const auto z = refine_branch_point(sym, seed + s)) found.push_back(*z);
        }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    std::vector<std::complex<double>> out;
    for (const std::complex<double>& z : found) {
        if (z.real() < spec.x_min || z.real() > spec.x_max ||
            std::abs(z.imag()) > std::numbers::pi)
            continue;
        bool dup = false;
        for (const std::complex<double>& w : out)
            if (std::abs(z - w) < 1e-6) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(z);
    }
    return out;
}

}  // namespace

OrderStarGrid fdm_orderstar(const std::map<long, Rational>& weights, const GridSpec& spec,
                            bool parallel) {
    if (!(spec.x_min < spec.x_max) || spec.nx < 2 || spec.ny < 2)
        throw std::domain_error("orderstar: invalid grid spec");
    const FdmSymbol sym = prepare_fdm(weights);
    OrderStarGrid grid;
    grid.spec = spec;
    grid.sheets.assign(1, std::vector<std::uint8_t>(
                              static_cast<std::size_t>(spec.nx) * spec.ny, 0));
    std::vector<std::uint8_t>& sheet = grid.sheets[0];
#pragma omp parallel for schedule(static) if (parallel)
    for (long iy = 0; iy < spec.ny; ++iy) {
        const double y = spec.y(iy);
        for (long ix = 0; ix < spec.nx; ++ix) {
            const std::complex<double> s = fdm_sigma(sym, {spec.x(ix), y});
            sheet[static_cast<std::size_t>(iy) * spec.nx + ix] = s.real() < 0.0 ? 1 : 0;
        }
    }
    return grid;
}

OrderStarGrid hv_orderstar(const SchemeSymbols& scheme, const GridSpec& spec, bool parallel) {
    if (!(spec.x_min < spec.x_max) || spec.nx < 2 || spec.ny < 2)
        throw std::domain_error("orderstar: invalid grid spec");
    const HvSymbol sym = prepare_hv(scheme);
    OrderStarGrid grid;
    grid.spec = spec;
    const std::size_t cells = static_cast<std::size_t>(spec.nx) * spec.ny;
    grid.sheets.assign(2, std::vector<std::uint8_t>(cells, 0));
    std::vector<double> dmag(cells, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
    for (long iy = 0; iy < spec.ny; ++iy) {
        const double y = spec.y(iy);
        for (long ix = 0; ix < spec.nx; ++ix) {
            const std::complex<double> z(spec.x(ix), y);
            const HvSigma s = hv_sigma(sym, z);
            const std::size_t at = static_cast<std::size_t>(iy) * spec.nx + ix;
            grid.sheets[0][at] = s.principal_plus.real() < 0.0 ? 1 : 0;
            grid.sheets[1][at] = s.principal_minus.real() < 0.0 ? 1 : 0;
            dmag[at] = std::abs(hv_discriminant(sym, z));
        }
    }
    grid.branch_points = find_branch_points(sym, spec, dmag);
    return grid;
}

bool fdm_axis_clear(const FdmSymbol& sym, long ny) {
    if (ny < 2) throw std::domain_error("orderstar: need at least 2 axis samples");
    const GridSpec ax{-1.0, 1.0, 2, ny};
    for (long iy = 0; iy < ny; ++iy)
        if (fdm_sigma(sym, {0.0, ax.y(iy)}).real() < 0.0) return false;
    return true;
}

bool hv_axis_clear(const HvSymbol& sym, long ny) {
    if (ny < 2) throw std::domain_error("orderstar: need at least 2 axis samples");
    const GridSpec ax{-1.0, 1.0, 2, ny};
    for (long iy = 0; iy < ny; ++iy) {
        const HvSigma s = hv_sigma(sym, {0.0, ax.y(iy)});
        if (s.principal_plus.real() < 0.0 || s.principal_minus.real() < 0.0) return false;
    }
    return true;
}

namespace {

double sector_fraction(long samples, double radius,
                       const std::function<double(std::complex<double>)>& re_sigma) {
    if (samples < 1 || radius <= 0.0)
        throw std::domain_error("orderstar: sector probe needs samples >= 1, radius > 0");
    long shaded = 0;
    for (long j = 0; j < samples; ++j) {
        const double t = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) /
                         static_cast<double>(samples);
        if (re_sigma(std::polar(radius, t)) < 0.0) ++shaded;
    }
    return static_cast<double>(shaded) / static_cast<double>(samples);
}

}  // namespace

double fdm_sector_fraction(const FdmSymbol& sym, double radius, long samples) {
    return sector_fraction(samples, radius,
                           [&](std::complex<double> z) { return fdm_sigma(sym, z).real(); });
}

double hv_sector_fraction(const HvSymbol& sym, double radius, long samples) {
    return sector_fraction(samples, radius, [&](std::complex<double> z) {
        return hv_sigma(sym, z).consistent.real();
    });
}

}  // namespace hvstab
