#pragma once

// Limit shapes of large random partitions: equilibrium densities on the
// circle, the hook-integral energy functional, the surface-tension linear
// program, a direct convex maximizer for the periodically weighted action,
// and the algebraic-curve route that solves the same variational problem
// through a conformal map and its period integrals.

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "ranpart/kernels.hpp"

namespace ranpart {

// ---------------------------------------------------------------------------
// Equilibrium bands on the unit circle
// ---------------------------------------------------------------------------

// g(phi) = sum_k k t_k e^{ik phi} + sum_k k tbar_k e^{-ik phi} for real
// parameter lists (tbar must equal t entrywise so that g is real-valued).
double g_of_phi(const std::vector<double>& t, const std::vector<double>& tbar,
                double phi);

struct BandGapStructure {
    double level = 0.0;
    std::vector<Band> bands;        // disjoint arcs of {g >= level} in [0, 2pi]
    bool degenerate_warning = false;  // level within ~1e-9 of a critical value
    double density() const;          // total arc length / (2 pi)
};

// Arcs where g(phi) >= level, resolved to ~1e-10 endpoint accuracy.
BandGapStructure bands_at_level(const std::vector<double>& t,
                                const std::vector<double>& tbar, double level);

// Fraction of the circle covered by the bands at the given level.
double limit_density(const std::vector<double>& t,
                     const std::vector<double>& tbar, double level);

// Translation-invariant local kernel of the band structure, evaluated at
// integer offset dx (value depends on x - y only).  Real because g is even,
// so the band set is symmetric under phi -> 2pi - phi.
double limit_kernel(const std::vector<double>& t,
                    const std::vector<double>& tbar, double level, long dx);

// ---------------------------------------------------------------------------
// The arcsine profile and discrete profiles
// ---------------------------------------------------------------------------

double vkls_slope(double x);   // (2/pi) arcsin(x/2) on [-2,2], sign(x) outside
double vkls_height(double x);  // its primitive with f(x) = |x| far away

// Piecewise-linear profile on a uniform grid over [lo, hi]; slopes[i] is the
// constant slope on cell i.  The far field must agree with |x| (slope -1 at
// the left edge, +1 at the right edge), which anchors value(lo) = |lo|.
struct DiscreteProfile {
    double lo = -3.0;
    double hi = 3.0;
    std::vector<double> slopes;

    std::size_t cells() const { return slopes.size(); }
    double cell_width() const;
    double mid(std::size_t i) const;
    double value(double x) const;  // integrate slopes from the left anchor
};

// Sample a slope function onto a uniform grid (cell midpoints).
DiscreteProfile profile_from_slope(double (*slope)(double), double lo,
                                   double hi, std::size_t cells);

// Largest |f(x) - g(x)| over a fine grid covering both supports.
double profile_sup_distance(const DiscreteProfile& f, const DiscreteProfile& g);

// Hook energy E(f) = 1/2 * iint_{s<t} (1+f'(s)) (1-f'(t)) log(t-s) ds dt,
// evaluated in closed form for the piecewise-constant slope field (exact per
// cell pair, no quadrature error).  E(|x|) = 0 and E(arcsine profile) = -1.
double hook_energy(const DiscreteProfile& f);

// ---------------------------------------------------------------------------
// Surface tension of a periodic weight
// ---------------------------------------------------------------------------

// Convex piecewise-linear function on [-1, 1] whose slopes are the u_k sorted
// increasingly and with sigma(-1) = 0; requires sum u_k = 0, which makes
// sigma(1) = 0 as well.
struct SigmaU {
    std::vector<double> breaks;  // N+1 points from -1 to 1
    std::vector<double> values;  // sigma at the breaks
    double operator()(double x) const;
};

SigmaU surface_tension(const std::vector<double>& u);

// ---------------------------------------------------------------------------
// Direct maximization of the action S(f) = -E(f) - kappa * int sigma_U(f')
// ---------------------------------------------------------------------------

struct MaximizeOptions {
    std::size_t cells = 320;      // uniform grid resolution
    double half_width = 3.0;      // support [-half_width, half_width]
    double tolerance = 1e-8;      // prox-gradient residual target
    long iteration_cap = 200000;  // NumericError if exceeded
};

struct MaximizeResult {
    DiscreteProfile profile;  // the maximizing profile f*
    double action;            // S(f*) = -E - kappa * int sigma_U(f')
    double energy;            // E(f*)
    long iterations = 0;
    double residual = 0.0;  // final prox-gradient residual
};

// Accelerated projected-gradient (FISTA with monotone restarts) over slope
// fields in [-1,1]^m with the zero-sum constraint that keeps the far field
// pinned to |x|.  The sigma_U term enters through its exact proximal map.
MaximizeResult maximize_action(const std::vector<double>& u, double kappa,
                               const MaximizeOptions& opts = {});

// ---------------------------------------------------------------------------
// Algebraic curve route: w + 1/w = B(z)
// ---------------------------------------------------------------------------

// Real polynomial B, monic of degree n with vanishing z^{n-1} coefficient.
// coeffs[k] multiplies z^k, so coeffs.size() == n+1, coeffs[n] == 1,
// coeffs[n-1] == 0.
struct SWCurveData {
    std::vector<double> coeffs;
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double eval(double x) const;
    std::complex<double> eval(std::complex<double> z) const;
    double derivative(double x) const;
};

SWCurveData chebyshev_curve(int n);  // B = 2 T_n(z/2): fully closed gaps

void validate_curve(const SWCurveData& curve);

// Maximal intervals where |B| <= 2 (the bands); throws ArgumentError if the
// curve is degenerate (bands overlap or fewer than expected real branch
// points in a way that breaks the band/gap alternation).
std::vector<std::pair<double, double>> sw_bands(const SWCurveData& curve);

struct SWMapValue {
    std::complex<double> w;    // branch with |w| >= 1
    std::complex<double> phi;  // normalized logarithm of w
};

// The map Phi(z) = 1 + 2/(pi i n) log w(z) on the closed upper half-plane,
// with the branch fixed by Phi -> +1 as z -> +infinity.  Real z values are
// evaluated as the boundary limit z + i0.  Branch tracking failures raise
// NumericError.
SWMapValue sw_map(const SWCurveData& curve, std::complex<double> z);

// Re Phi(x + i0) sampled on a uniform grid: the slope field of the maximizer
// the curve encodes.
DiscreteProfile maximizer_from_map(const SWCurveData& curve,
                                   std::size_t cells = 512,
                                   double half_width = 3.0);

// One period integral per (finite) gap between consecutive bands, left to
// right:  p_k = -2/(pi n) sign(B) * int_gap x B'(x) / sqrt(B(x)^2 - 4) dx.
std::vector<double> sw_periods(const SWCurveData& curve);

struct MatchResult {
    SWCurveData curve;
    double residual = 0.0;  // max |pi/2 * p_k - kappa (u_k - u_{k+1})|
    long iterations = 0;
};

// Solve for the curve whose periods satisfy pi/2 * p_k = kappa (u_k - u_{k+1})
// for the strictly decreasing zero-sum vector u.  An optional initial guess
// supplies the free (low-order) coefficients of B.
MatchResult match_periods(const std::vector<double>& u, double kappa,
                          const std::optional<std::vector<double>>& initial =
                              std::nullopt);

}  // namespace ranpart
