#include <hvstab/simulator.hpp>

#include <hvstab/hweno.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

namespace hvstab {

namespace {

double wrap_unit(double x) {
    const double w = x - std::floor(x);
    return w >= 1.0 ? 0.0 : w;
}

// Nodes and weights of 20-point Gauss-Legendre quadrature on [-1, 1], by
// Newton iteration on the Legendre recurrence. Used for the one profile
// whose cell averages have no elementary antiderivative; at any practical
// width/spacing ratio the quadrature error is far below rounding.
const std::array<std::pair<double, double>, 20>& gauss_legendre_nodes() {
    static const std::array<std::pair<double, double>, 20> table = [] {
        std::array<std::pair<double, double>, 20> t{};
        constexpr long n = 20;
        for (long i = 0; i < n; ++i) {
            double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(n) + 0.5));
            double p1 = 0.0, dp = 1.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                p1 = x;
                for (long j = 2; j <= n; ++j) {
                    const double p2 =
                        ((2.0 * static_cast<double>(j) - 1.0) * x * p1 -
                         (static_cast<double>(j) - 1.0) * p0) /
                        static_cast<double>(j);
                    p0 = p1;
                    p1 = p2;
                }
                dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
                const double step = p1 / dp;
                x -= step;
                if (std::abs(step) < 1e-15) break;
            }
            t[static_cast<std::size_t>(i)] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return t;
    }();
    return table;
}

// Point values, derivatives, and exact cell means of the initial profiles,
// translation handled by the caller shifting the evaluation point.
class ProfileEval {
  public:
    explicit ProfileEval(const InitialCondition& ic) : ic_(ic) {
        const bool needs_wave = ic.kind != InitialCondition::Kind::Gaussian;
        const bool needs_width = ic.kind != InitialCondition::Kind::Sine;
        if (needs_wave && ic.wavenumber < 1)
            throw std::domain_error("profile: wavenumber must be a positive integer");
        if (needs_width && (!(ic.width > 0.0) || ic.width > 0.2))
            throw std::domain_error("profile: width must lie in (0, 0.2]");
    }

    [[nodiscard]] double value(double x) const {
        switch (ic_.kind) {
            case InitialCondition::Kind::Sine:
                return std::sin(carrier() * x);
            case InitialCondition::Kind::Gaussian:
                return bump(wrap_unit(x));
            case InitialCondition::Kind::Packet:
                return bump(wrap_unit(x)) * std::sin(carrier() * x);
        }
        return 0.0;
    }

    [[nodiscard]] double derivative(double x) const {
        switch (ic_.kind) {
            case InitialCondition::Kind::Sine:
                return carrier() * std::cos(carrier() * x);
            case InitialCondition::Kind::Gaussian:
                return bump_prime(wrap_unit(x));
            case InitialCondition::Kind::Packet: {
                const double xw = wrap_unit(x);
                return bump_prime(xw) * std::sin(carrier() * x) +
                       bump(xw) * carrier() * std::cos(carrier() * x);
            }
        }
        return 0.0;
    }

    // Mean over [x, x + h].
    [[nodiscard]] double average(double x, double h) const {
        switch (ic_.kind) {
            case InitialCondition::Kind::Sine: {
                const double c = carrier();
                return (std::cos(c * x) - std::cos(c * (x + h))) / (c * h);
            }
            case InitialCondition::Kind::Gaussian: {
                const double xw = wrap_unit(x), w = ic_.width;
                double acc = 0.0;
                for (long n = -2; n <= 2; ++n) {
                    const double c = 0.5 + static_cast<double>(n);
                    acc += std::erf((xw + h - c) / w) - std::erf((xw - c) / w);
                }
                return acc * std::sqrt(std::numbers::pi) * w / (2.0 * h);
            }
            case InitialCondition::Kind::Packet: {
                double acc = 0.0;
                for (const auto& [node, weight] : gauss_legendre_nodes())
                    acc += weight * value(x + 0.5 * h * (node + 1.0));
                return 0.5 * acc;
            }
        }
        return 0.0;
    }

  private:
    [[nodiscard]] double carrier() const {
        return 2.0 * std::numbers::pi * static_cast<double>(ic_.wavenumber);
    }
    // Periodized bump at a wrapped coordinate; two images either side cover
    // the admissible widths beyond double precision.
    [[nodiscard]] double bump(double xw) const {
        double acc = 0.0;
        for (long n = -2; n <= 2; ++n) {
            const double s = (xw - 0.5 - static_cast<double>(n)) / ic_.width;
            acc += std::exp(-s * s);
        }
        return acc;
    }
    [[nodiscard]] double bump_prime(double xw) const {
        double acc = 0.0;
        for (long n = -2; n <= 2; ++n) {
            const double s = (xw - 0.5 - static_cast<double>(n)) / ic_.width;
            acc += -2.0 * s * std::exp(-s * s) / ic_.width;
        }
        return acc;
    }

    InitialCondition ic_;
};

double combined_norm(const State& s, double h) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.a.size(); ++j) acc += s.a[j] * s.a[j] + s.b[j] * s.b[j];
    return std::sqrt(h * acc);
}

void axpy(const State& base, double c, const State& d, State* out) {
    const std::size_t n = base.a.size();
    out->a.resize(n);
    out->b.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out->a[j] = base.a[j] + c * d.a[j];
        out->b[j] = base.b[j] + c * d.b[j];
    }
}

}  // namespace

HvOperator::HvOperator(const DDOCoefficients& d, long N) : n_(N), h_(1.0 / static_cast<double>(N)) {
    long lo = 0, hi = 1;  // the cell equation touches node j+1
    for (const auto& [k, v] : d.alpha) {
        alpha_.emplace_back(k, v.get_d());
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    for (const auto& [k, v] : d.beta) {
        beta_.emplace_back(k, v.get_d());
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    if (N < hi - lo + 1)
        throw std::domain_error("hv operator: grid narrower than the stencil");
}

void HvOperator::apply(const State& s, State* out, bool parallel) const {
    const long n = n_;
    out->a.resize(static_cast<std::size_t>(n));
    out->b.resize(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (parallel)
    for (long j = 0; j < n; ++j) {
        const long jp = j + 1 == n ? 0 : j + 1;
        out->a[j] = -(s.b[jp] - s.b[j]) / h_;
        double acc = 0.0;
        for (const auto& [k, w] : alpha_) acc += w * s.a[((j + k) % n + n) % n];
        for (const auto& [k, w] : beta_) acc += w * s.b[((j + k) % n + n) % n];
        out->b[j] = -acc / h_;
    }
}

HwenoOperator::HwenoOperator(long l, long r, long N)
    : n_(N), lo_(-l + 1), h_(1.0 / static_cast<double>(N)) {
    const HermiteFundamentals f = hermite_fundamentals(l, r);
    const FluxCoefficients fc = flux_coeffs(l, r);
    Rational b0(0);
    for (const auto& [k, v] : f.g2pp) b0 += v;
    if (N < l + r + 1)
        throw std::domain_error("hweno operator: grid narrower than the stencil");

    // Folding the signed prefix sums U_k, V_k of the flux formula into plain
    // convolution weights: the term at offset mu >= 1 collects every k >= mu,
    // the one at mu <= 0 collects -(every k <= mu-1).
    const auto fold = [&](const std::function<Rational(long)>& wk) {
        std::vector<double> out(static_cast<std::size_t>(r - lo_ + 1), 0.0);
        for (long mu = 1; mu <= r; ++mu) {
            Rational acc(0);
            for (long k = mu; k <= r; ++k) acc += wk(k);
            out[static_cast<std::size_t>(mu - lo_)] = acc.get_d();
        }
        for (long mu = lo_; mu <= 0; ++mu) {
            Rational acc(0);
            for (long k = -l; k <= mu - 1; ++k) acc += wk(k);
            acc = -acc;
            out[static_cast<std::size_t>(mu - lo_)] = acc.get_d();
        }
        return out;
    };
    wfu_ = fold([&](long k) -> Rational { return Rational(2) * fc.c.at(k) * f.lprime.at(k); });
    wfv_ = fold([&](long k) -> Rational { return -fc.c.at(k); });
    whu_ = fold([&](long k) -> Rational {
        return f.h2pp.at(k) + Rational(2) * fc.c.at(k) * f.lprime.at(k) * b0;
    });
    whv_ = fold([&](long k) -> Rational { return f.g2pp.at(k) - fc.c.at(k) * b0; });
}

void HwenoOperator::apply(const State& s, State* out, bool parallel) const {
    const long n = n_;
    std::vector<double> flux_val(static_cast<std::size_t>(n));
    std::vector<double> flux_der(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (parallel)
    for (long j = 0; j < n; ++j) {
        double fv = 0.0, du = 0.0, dv = 0.0;
        for (std::size_t i = 0; i < wfu_.size(); ++i) {
            const long at = ((j + lo_ + static_cast<long>(i)) % n + n) % n;
            fv += wfu_[i] * s.a[at] + h_ * wfv_[i] * s.b[at];
            du += whu_[i] * s.a[at];
            dv += whv_[i] * s.b[at];
        }
        flux_val[static_cast<std::size_t>(j)] = fv;
        flux_der[static_cast<std::size_t>(j)] = du / h_ + dv;
    }
    out->a.resize(static_cast<std::size_t>(n));
    out->b.resize(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) if (parallel)
    for (long j = 0; j < n; ++j) {
        const long jm = j == 0 ? n - 1 : j - 1;
        out->a[j] = -(flux_val[j] - flux_val[jm]) / h_;
        out->b[j] = -(flux_der[j] - flux_der[jm]) / h_;
    }
}

HvOperator assemble_hv_rhs(const DDOCoefficients& d, long N) { return HvOperator(d, N); }

HwenoOperator assemble_hweno_rhs(long l, long r, long N) { return HwenoOperator(l, r, N); }

State exact_state(SchemeKind scheme, const InitialCondition& ic, long N, double shift) {
    if (N < 1) throw std::domain_error("exact_state: need at least one cell");
    const ProfileEval p(ic);
    const double h = 1.0 / static_cast<double>(N);
    State s;
    s.a.resize(static_cast<std::size_t>(N));
    s.b.resize(static_cast<std::size_t>(N));
    for (long j = 0; j < N; ++j) {
        const double x = static_cast<double>(j) * h - shift;
        if (scheme == SchemeKind::HV) {
            s.a[static_cast<std::size_t>(j)] = p.average(x, h);
            s.b[static_cast<std::size_t>(j)] = p.value(x);
        } else {
            s.a[static_cast<std::size_t>(j)] = p.value(x);
            s.b[static_cast<std::size_t>(j)] = p.derivative(x);
        }
    }
    return s;
}

SimResult simulate(const SimConfig& cfg) {
    if (cfg.N < 2 * (cfg.left + cfg.right))
        throw std::domain_error("simulate: N must be at least twice the stencil point count");
    if (!(cfg.cfl > 0.0) || cfg.cfl > 2.0)
        throw std::domain_error("simulate: cfl must lie in (0, 2]");
    if (!(cfg.t_final > 0.0)) throw std::domain_error("simulate: t_final must be positive");

    const long n = cfg.N;
    const double h = 1.0 / static_cast<double>(n);
    std::optional<HvOperator> hv;
    std::optional<HwenoOperator> hw;
    if (cfg.scheme == SchemeKind::HV)
        hv.emplace(build_ddo(stencil_from_LR(cfg.left, cfg.right)), n);
    else
        hw.emplace(cfg.left, cfg.right, n);
    const auto rhs = [&](const State& in, State* out) {
        if (hv)
            hv->apply(in, out);
        else
            hw->apply(in, out);
    };

    State s = exact_state(cfg.scheme, cfg.ic, n, 0.0);
    const double dt = cfg.cfl * h;
    long steps = std::llround(cfg.t_final / dt);
    if (steps < 1) steps = 1;

    SimResult res;
    std::vector<double> lognorm;
    res.times.reserve(static_cast<std::size_t>(steps) + 1);
    res.l2_norm.reserve(static_cast<std::size_t>(steps) + 1);
    lognorm.reserve(static_cast<std::size_t>(steps) + 1);
    double log_scale = 0.0;  // accumulated log of the renormalizations
    const double n0 = combined_norm(s, h);
    res.times.push_back(0.0);
    res.l2_norm.push_back(n0);
    lognorm.push_back(std::log(n0));

    State k1, k2, k3, k4, tmp;
    for (long step = 1; step <= steps; ++step) {
        rhs(s, &k1);
        axpy(s, 0.5 * dt, k1, &tmp);
        rhs(tmp, &k2);
        axpy(s, 0.5 * dt, k2, &tmp);
        rhs(tmp, &k3);
        axpy(s, dt, k3, &tmp);
        rhs(tmp, &k4);
        for (long j = 0; j < n; ++j) {
            s.a[j] += dt / 6.0 * (k1.a[j] + 2.0 * k2.a[j] + 2.0 * k3.a[j] + k4.a[j]);
            s.b[j] += dt / 6.0 * (k1.b[j] + 2.0 * k2.b[j] + 2.0 * k3.b[j] + k4.b[j]);
        }
        double nn = combined_norm(s, h);
        if (!std::isfinite(nn))
            throw std::runtime_error("simulate: solution degenerated to NaN at t = " +
                                     std::to_string(static_cast<double>(step) * dt));
        if (nn > 1e100) {
            log_scale += std::log(nn);
            for (long j = 0; j < n; ++j) {
                s.a[j] /= nn;
                s.b[j] /= nn;
            }
            nn = 1.0;
        }
        res.times.push_back(static_cast<double>(step) * dt);
        res.l2_norm.push_back(std::exp(log_scale) * nn);
        lognorm.push_back(log_scale + std::log(nn));
    }

    // Least-squares slope of log norm over time.
    const double m = static_cast<double>(lognorm.size());
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < lognorm.size(); ++i) {
        st += res.times[i];
        sy += lognorm[i];
        stt += res.times[i] * res.times[i];
        sty += res.times[i] * lognorm[i];
    }
    res.growth_rate = (m * sty - st * sy) / (m * stt - st * st);

    const State exact =
        exact_state(cfg.scheme, cfg.ic, n, static_cast<double>(steps) * dt);
    double err = 0.0;
    for (long j = 0; j < n; ++j) {
        const double da = s.a[j] - exact.a[j];
        const double db = s.b[j] - exact.b[j];
        err += da * da + db * db;
    }
    res.final_error = std::sqrt(h * err);
    return res;
}

long worst_discrete_mode(const DDOCoefficients& d, long N) {
    if (N < 2) throw std::domain_error("worst_discrete_mode: need at least two cells");
    using Cx = std::complex<double>;
    const Cx iu(0.0, 1.0);
    long best = 1;
    double best_rate = -std::numeric_limits<double>::infinity();
    for (long m = 1; m < N; ++m) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(m) /
                             static_cast<double>(N);
        Cx hs(0.0, 0.0), gs(0.0, 0.0);
        for (const auto& [k, v] : d.beta) hs += v.get_d() * std::exp(iu * (theta * static_cast<double>(k)));
        for (const auto& [k, v] : d.alpha) gs += v.get_d() * std::exp(iu * (theta * static_cast<double>(k)));
        const Cx root = std::sqrt(hs * hs + 4.0 * (std::exp(iu * theta) - 1.0) * gs);
        const double rate = static_cast<double>(N) *
                            std::max(-((hs + root) * 0.5).real(), -((hs - root) * 0.5).real());
        if (rate > best_rate) {
            best_rate = rate;
            best = m;
        }
    }
    return best;
}

}  // namespace hvstab
