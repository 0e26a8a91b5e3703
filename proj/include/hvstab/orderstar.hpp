#pragma once

#include <hvstab/ddo.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace hvstab {

// Rectangular scan window in the complex plane: x in [x_min, x_max] sampled
// at nx points, y sampled at ny points over the fixed periodicity strip
// [-pi, pi]. Both endpoint rows/columns are included.
struct GridSpec {
    double x_min = 0.0, x_max = 0.0;
    long nx = 0, ny = 0;

    [[nodiscard]] double x(long ix) const;
    [[nodiscard]] double y(long iy) const;
};

// Validated constructor; rejects x_min >= x_max and fewer than two samples
// per direction with std::domain_error.
GridSpec make_grid(double x_min, double x_max, long nx, long ny);

// Shading scan of sigma(z) = lambda(z) - z over a window: one sheet for a
// classical finite-difference symbol, two for the hybrid-variable quadratic
// (sheet 0 carries the principal root (H + sqrt(d))/2, sheet 1 the other).
// Each sheet is a row-major nx*ny matrix of 0/1 flags, 1 = Re sigma < 0
// strictly. Branch points (zeros of the discriminant d = H^2 + 4F) are
// reported for two-sheet scans only.
struct OrderStarGrid {
    GridSpec spec;
    std::vector<std::vector<std::uint8_t>> sheets;
    std::vector<std::complex<double>> branch_points;

    [[nodiscard]] bool shaded(std::size_t sheet, long ix, long iy) const {
        return sheets[sheet][static_cast<std::size_t>(iy) * spec.nx + ix] != 0;
    }
};

// The unique (l+r)-th order first-derivative weights on nodes -l..r, from
// the exact solve of the Vandermonde order conditions; requires l + r >= 1.
std::map<long, Rational> fdm_weights(long l, long r);

// A finite-difference symbol prepared for complex scanning: float weights
// for direct evaluation plus the exact Taylor tail of sigma used below the
// switch radius, where the leading-order cancellation of sum a_k e^{kz} - z
// against p vanishing moments would otherwise drown sigma in rounding noise.
struct FdmSymbol {
    std::vector<std::pair<long, double>> weights;
    std::vector<double> tail;  // Taylor coefficients tail_start, tail_start+1, ...
    long tail_start = 0;       // first index with a nonzero exact coefficient
};

FdmSymbol prepare_fdm(const std::map<long, Rational>& weights);

// sigma(z) = sum a_k e^{kz} - z, evaluated directly away from the origin and
// through the exact tail inside |z| < 0.25.
std::complex<double> fdm_sigma(const FdmSymbol& sym, std::complex<double> z);

// A hybrid-variable scheme prepared for complex scanning. The quadratic
// lambda^2 - H(z/i) lambda - F(z/i) = 0 is evaluated with H(z/i) =
// sum beta_k e^{kz} and F(z/i) = (e^z - 1) sum alpha_k e^{kz}; near the
// origin the consistent root is recovered as Q_tail(z) / sigma_big, where
// Q(z) = z^2 - Hz - F has its leading Taylor coefficients identically zero
// and sigma_big is the in-magnitude-larger root of the shifted quadratic.
struct HvSymbol {
    std::vector<std::pair<long, double>> alpha, beta;
    std::vector<double> qtail;  // Taylor coefficients of Q from tail_start on
    long tail_start = 0;
};

// Recovers the exact coefficient maps from the split trig parts (the cosine
// coefficient at k >= 1 folds w_k + w_{-k}, the sine coefficient w_k - w_{-k})
// and precomputes the tail.
HvSymbol prepare_hv(const SchemeSymbols& sym);

// Both roots of the quadratic as sigma = lambda - z, principal-branch order,
// plus the consistent root (the one tangent to the exact symbol at z = 0,
// equal to whichever of the two is smaller in magnitude near the origin).
struct HvSigma {
    std::complex<double> principal_plus, principal_minus, consistent;
};

HvSigma hv_sigma(const HvSymbol& sym, std::complex<double> z);

// Discriminant d(z) = H^2 + 4F of the quadratic and its derivative
// d' = 2HH' + 4F', used by the branch-point Newton iteration.
std::complex<double> hv_discriminant(const HvSymbol& sym, std::complex<double> z);
std::complex<double> hv_discriminant_derivative(const HvSymbol& sym, std::complex<double> z);

// Newton refinement of d(z) = 0 from one seed: up to 50 steps, stopping on a
// step below 1e-12; the result is accepted only when |d| < 1e-8 at the
// landing point. Returns nullopt for runaway or stagnating iterations.
std::optional<std::complex<double>> refine_branch_point(const HvSymbol& sym,
                                                        std::complex<double> seed);

// Single-sheet scan of Re(sum a_k e^{kz} - z) < 0.
OrderStarGrid fdm_orderstar(const std::map<long, Rational>& weights, const GridSpec& spec,
                            bool parallel = true);

// Two-sheet scan of the hybrid-variable Riemann surface with principal-branch
// sheet assignment (branch-cut seams are accepted; the union of sheets is
// continuation-independent), plus branch points from Newton refinement seeded
// at grid-local minima of |d| below 1e-2.
OrderStarGrid hv_orderstar(const SchemeSymbols& sym, const GridSpec& spec,
                           bool parallel = true);

// Whether the x = 0 column is free of shading when sampled at ny points over
// [-pi, pi] (all sheets for the two-sheet surface). Classically stable
// schemes keep the imaginary axis unshaded.
bool fdm_axis_clear(const FdmSymbol& sym, long ny);
bool hv_axis_clear(const HvSymbol& sym, long ny);

// Shaded fraction of `samples` equispaced angles on the circle |z| = radius
// (offset half a step to dodge the axes). Near the origin the order star is
// adjoined by q equal shaded sectors, q being the exponent of the branch's
// leading truncation term (p+1 classically), so the fraction approaches 1/2
// as the radius shrinks. The two-sheet variant probes the consistent root.
double fdm_sector_fraction(const FdmSymbol& sym, double radius, long samples);
double hv_sector_fraction(const HvSymbol& sym, double radius, long samples);

}  // namespace hvstab
