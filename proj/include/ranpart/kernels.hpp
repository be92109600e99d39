#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "ranpart/halfint.hpp"
#include "ranpart/measures.hpp"
#include "ranpart/partition.hpp"

namespace ranpart {

// Correlation kernels on the half-integer lattice.
struct SchurContourSpec {
    // T(z) = sum_k t_k z^k - sum_k tbar_k z^{-k}; K(x,y) is the double
    // contour integral of e^{T(z)-T(w)} / ((z-w) z^{x+1/2} w^{-y+1/2})
    // over |z| = r_z, |w| = r_w.
    std::vector<double> t;
    std::vector<double> tbar;
    double r_z = 1.6;
    double r_w = 0.625;
    int initial_nodes = 64; // doubled until two refinements agree to 1e-12
};
struct BesselSpec {
    double xi = 1.0; // >= 0; kernel argument is 2 sqrt(xi)
};
struct SineSpec {
    double a = 1.0; // density parameter, in [0, pi]
};
struct Band {
    double alpha = 0.0; // [alpha, beta] subset of [0, 2*pi)
    double beta = 0.0;
};
struct MultiBandSpec {
    // Fourier transform of the indicator of the union of bands, read with the
    // oscillatory phase e^{-i phi (x-y)}; entries are complex Hermitian in
    // general, so determinants are taken over the complex matrix.
    std::vector<Band> bands; // pairwise disjoint
};

using KernelSpec =
    std::variant<SchurContourSpec, BesselSpec, SineSpec, MultiBandSpec>;

// Full complex entry (needed for MultiBand correlations).
std::complex<double> kernel_eval_c(const KernelSpec& spec, Half x, Half y);

// Real kernel value; for the families with real symmetric kernels the
// imaginary residue of the evaluation is checked and discarded.
double kernel_eval(const KernelSpec& spec, Half x, Half y);

// det[K(x_i, x_j)] over distinct points, |X| <= 12; values outside
// [-1e-10, 1 + 1e-10] raise InvariantError, tiny excursions are clamped.
double correlation(const KernelSpec& spec, std::vector<Half> xs);

struct BruteResult {
    double value = 0.0;      // sum of P(lambda) over |lambda| <= e_max with X in S(lambda)
    double tail_bound = 0.0; // un-enumerated probability mass (exact complement)
};

// Direct truncated sum of Prob{X subset of S(lambda)} for the positive
// normalized families (PoissonizedPlancherel, Schur with tbar == t).
BruteResult brute_force_correlation(const MeasureSpec& spec,
                                    const std::vector<Half>& xs, int e_max);

// det(I - K_B) over a finite set B (|B| <= 400): Prob{no particles in B}.
double gap_probability(const KernelSpec& spec, std::vector<Half> bs);

// Prob{lambda_1 <= h} under poissonized Plancherel(xi), through the Bessel
// gap determinant on B = {h + 1/2, h + 3/2, ...} truncated where the
// diagonal drops below 1e-16.
double lambda1_cdf_bessel(double xi, int h);

// J_0(s), ..., J_nmax(s) by backward (Miller) recurrence, normalized with
// J_0 + 2 sum J_{2k} = 1; exact-to-double across orders past the turning
// point where upward recurrence is unstable.
std::vector<double> bessel_j_row(double s, int nmax);

} // namespace ranpart
