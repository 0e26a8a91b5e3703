#pragma once

#include <hvstab/ddo.hpp>

#include <utility>
#include <vector>

namespace hvstab {

enum class SchemeKind { HV, HWENO };

// Initial profile on the unit periodic interval. sine(k): sin(2 pi k x).
// gaussian(width): bump exp(-((x - 1/2)/width)^2), periodized by image sums;
// width is capped at 0.2 so the truncated images stay below rounding.
// packet(k, width): the same bump modulating the sine carrier.
struct InitialCondition {
    enum class Kind { Sine, Gaussian, Packet };
    Kind kind = Kind::Sine;
    long wavenumber = 1;
    double width = 0.1;
};

struct SimConfig {
    SchemeKind scheme = SchemeKind::HV;
    long left = 0, right = 0;  // HV point counts (L, R); HWENO cell counts (l, r)
    long N = 0;                // number of cells; must be >= 2 * (left + right)
    double cfl = 0.4;          // time step is cfl * h; must lie in (0, 2]
    double t_final = 1.0;
    InitialCondition ic;
};

// Norm history of one run. The step count rounds t_final / dt, so the
// realized final time is steps * dt; the error is measured against the
// profile translated by that realized time. Growth bookkeeping is carried in
// log space (the state is renormalized whenever its norm passes 1e100), so
// growth_rate stays finite even when the reported norms overflow to inf.
struct SimResult {
    std::vector<double> times;
    std::vector<double> l2_norm;
    double final_error = 0.0;  // combined L2 against the translated profile
    double growth_rate = 0.0;  // least-squares slope of log norm over time
};

// Two periodic unknown families of equal length N: cell averages and node
// values for HV; node values and node derivatives (v = u_x) for HWENO.
struct State {
    std::vector<double> a, b;
};

// Periodic hybrid-variable right-hand side at unit advection speed:
// a_j' = -(b_{j+1} - b_j)/h and b_j' = -(1/h)(sum alpha_k a_{j+k} +
// sum beta_k b_{j+k}), the cell between nodes j and j+1 carrying index j.
class HvOperator {
  public:
    HvOperator(const DDOCoefficients& d, long N);
    void apply(const State& s, State* out, bool parallel = true) const;
    [[nodiscard]] long cells() const { return n_; }
    [[nodiscard]] double spacing() const { return h_; }

  private:
    long n_ = 0;
    double h_ = 0.0;
    std::vector<std::pair<long, double>> alpha_, beta_;
};

// Periodic Hermite-WENO right-hand side in conservative form: interface
// fluxes for the value and derivative families are assembled from the
// closed-form reconstruction weights, then differenced, so both sums
// telescope and the totals are conserved to rounding. The signed prefix
// sums of the flux formula are folded into plain convolution weights over
// offsets -l+1 .. r at construction time.
class HwenoOperator {
  public:
    HwenoOperator(long l, long r, long N);
    void apply(const State& s, State* out, bool parallel = true) const;
    [[nodiscard]] long cells() const { return n_; }
    [[nodiscard]] double spacing() const { return h_; }

  private:
    long n_ = 0, lo_ = 0;  // lo_ = -l + 1, first offset of the folded window
    double h_ = 0.0;
    std::vector<double> wfu_, wfv_, whu_, whv_;  // per offset lo_ .. r
};

HvOperator assemble_hv_rhs(const DDOCoefficients& d, long N);
HwenoOperator assemble_hweno_rhs(long l, long r, long N);

// Exact discrete fields of the profile translated by `shift`: HV cell
// averages come from analytic integrals (Gauss-Legendre for the packet,
// exact to rounding), nodes from point values; the HWENO variant carries
// point values and point derivatives.
State exact_state(SchemeKind scheme, const InitialCondition& ic, long N, double shift);

// Classical RK4 march of the semi-discretization. Throws std::runtime_error
// when the solution degenerates to NaN (expected for strongly unstable
// schemes run far too long) and std::domain_error for invalid configs.
SimResult simulate(const SimConfig& cfg);

// The discrete Fourier mode m in 1..N-1 whose semidiscrete eigenvalue pair
// has the largest growth rate at this resolution — the sharpest initial
// excitation for a growth-sign classification run.
long worst_discrete_mode(const DDOCoefficients& d, long N);

}  // namespace hvstab
