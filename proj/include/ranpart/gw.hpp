#pragma once

#include <gmpxx.h>

#include <complex>
#include <map>
#include <vector>

#include "ranpart/partition.hpp"

namespace ranpart {

// Stationary descendent query for a target curve: degree d, insertion
// exponents k_i (tau_{k_i} of a point class), target genus g_X. The partition
// sum itself is defined for every query; when Sum k_i = 2d + 2g - 2 has a
// nonnegative integer solution g, the value also has a connected
// interpretation through the one-point factorization below.
struct GWQuery {
    int degree = 0;
    std::vector<int> insertions;
    int target_genus = 0;
};

// Branched-cover count query: covers of a genus-g_X base of degree d with
// prescribed ramification classes branch_data (each a partition of d).
struct HurwitzQuery {
    int degree = 1;
    int base_genus = 0;
    std::vector<Partition> branch_data;
};

// Sphere target (g_X = 0), possibly disconnected domain:
//   1/prod_i (k_i+1)!  *  Sum_{|lambda|=d} (dim lambda / d!)^2 prod_i
//   p_{k_i+1}(lambda),
// exact. Anchors: d=0,k=(0) -> -1/24; d=1,k=(0) -> 23/24.
mpq_class gw_stationary(const GWQuery& q);

// Same partition sum with weight (dim lambda / d!)^{2-2g_X} for a genus-g_X
// target. g_X = 1 makes every weight 1 (uniform measure): with no insertions
// the value is the partition count p(d).
mpq_class gw_stationary_target(const GWQuery& q);

// gw_stationary_target evaluated with the lambda-sum split across `threads`
// workers, each reducing its own slice before a final merge. Exact rational
// reduction is order-independent, so this must equal the serial value bit for
// bit; it is kept public so tests can assert exactly that.
mpq_class gw_stationary_target_parallel(const GWQuery& q, int threads);

// Truncated expansion of <alpha_1^d E(z_1)...E(z_n) alpha_{-1}^d> / (d!)^2 as
// a Laurent series in each insertion variable, exponents -1..order. The state
// alpha_{-1}^d v_empty is built by the Fock-space ladder operators (so the
// per-partition weight is an independent route to dim lambda), and the
// diagonal eigenvalue of each E(z) expands as 1/z + Sum_k p_k z^k / k!.
// coefficient({k_1+1,...,k_n+1}) equals gw_stationary(d, k) exactly.
struct GWSeries {
    int num_vars = 0;
    int order = 0; // largest exponent retained in each variable
    std::map<std::vector<int>, mpq_class> coeffs; // zero coefficients dropped
    mpq_class coefficient(const std::vector<int>& exponents) const;
};
GWSeries gw_generating(int degree, int num_insertions, int order);

// Connected one-point values <tau_{2g-2+2d}(pt)>^o_d for g = 0..g_max,
// computed two ways and compared exactly:
//   (a) the coefficient of z^{2g} in S(z)^{2d-1} / (d!)^2 with
//       S(z) = sinh(z/2)/(z/2);
//   (b) the triangular inversion of the disconnected values,
//       <tau_k>_e = Sum_{e'<=e} <tau_k>^o_{e'} * Z(e-e'),  Z(m) = 1/m!,
//       seeded by gw_stationary.
// Disagreement throws InvariantError. The d=0, g=0 slot (formally tau_{-2})
// is the unit constant term of 1/S and is reported from route (a) alone.
std::vector<mpq_class> connected_1pt(int degree, int g_max);

// Automorphism-weighted, possibly disconnected branched-cover count:
//   Sum_{|lambda|=d} (dim lambda / d!)^{2-2g_X} prod_i f_{eta_i}(lambda)
// with f the central characters. Exact.
mpq_class hurwitz_count(const HurwitzQuery& q);

// The same number by raw enumeration: tuples
// (a_1,b_1,...,a_g,b_g, s_1,...,s_n) in S_d with
// prod_j [a_j,b_j] prod_i s_i = identity and s_i in class eta_i, counted and
// divided by d!. Must equal hurwitz_count wherever it runs.
mpq_class hurwitz_brute(const HurwitzQuery& q);

// Coefficients of q^d, d = 0..q_order, in tr q^{L_0} E(z_1)...E(z_n) over the
// charge-zero sector: the genus-one-target (uniform measure) stationary
// series. With no insertions this is the Euler generating function of p(d).
std::vector<std::complex<double>> elliptic_series(
    const std::vector<std::complex<double>>& zs, int q_order);

} // namespace ranpart
