#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "ranpart/partition.hpp"

namespace ranpart {

// The five measure families on partitions.
//
// Plancherel and PoissonizedPlancherel (including its e^{-xi} factor) and
// Schur (including its 1/Z factor) are normalized; Jack and Periodic weights
// are unnormalized, with partition_function exposing their normalizers.
struct PlancherelSpec {
    int n = 0;
};
struct PoissonizedPlancherelSpec {
    double xi = 1.0; // > 0
};
struct SchurSpec {
    // Power-sum parameters: t[k-1] multiplies alpha_{-k}, tbar likewise.
    // Weights are guaranteed nonnegative only when tbar == t (real data);
    // otherwise the family is formal and weights may be signed.
    std::vector<double> t;
    std::vector<double> tbar;
};
struct JackSpec {
    mpq_class eps1; // eps1 * eps2 != 0
    mpq_class eps2;
    int d = 0;
};
struct PeriodicSpec {
    std::vector<mpq_class> u; // N residue potentials, sum exactly 0
    double xi = 1.0;          // > 0
    double hbar = 1.0;        // > 0
};

using MeasureSpec = std::variant<PlancherelSpec, PoissonizedPlancherelSpec,
                                 SchurSpec, JackSpec, PeriodicSpec>;

// Throws ArgumentError when spec parameters violate their invariants.
void validate(const MeasureSpec& spec);

// Weight of one partition under the family conventions above.
// Size preconditions: Plancherel needs |lambda| = n, Jack needs |lambda| = d.
double weight(const MeasureSpec& spec, const Partition& lam);

// Exact rational weight; available for the all-rational families
// (Plancherel, Jack), ArgumentError otherwise.
mpq_class weight_exact(const MeasureSpec& spec, const Partition& lam);

struct ZResult {
    double value = 0.0;              // the family's partition function
    double tail_bound = 0.0;         // rigorous bound on truncated mass
    std::optional<mpq_class> exact;  // set when the value is exactly rational
};

// Family-specific normalizer:
//   Plancherel            -> 1 exactly,
//   PoissonizedPlancherel -> truncated sum of (normalized) weights -> 1,
//   Schur                 -> exp(sum_k k t_k tbar_k) in closed form,
//   Jack                  -> exact sum over |lambda| = d, which must equal
//                            1 / (d! (eps1 eps2)^d) (asserted),
//   Periodic              -> truncated sum of unnormalized weights with a
//                            Poisson-style tail bound.
ZResult partition_function(const MeasureSpec& spec, int truncation);

// <|lambda|> under the Schur measure: sum_k k^2 t_k tbar_k.
double expected_size_schur(const std::vector<double>& t,
                           const std::vector<double>& tbar);

// Potential energy sum_{x in S(lambda), x > -M N} u(x mod N), residues fixed
// in {1/2, ..., N-1/2} (u[k] belongs to residue k + 1/2). Requires
// sum_k u_k = 0 exactly, which makes the value independent of the cutoff;
// m_cutoff is auto-enlarged until -M N lies below every displaced particle.
mpq_class energy_U(const std::vector<mpq_class>& u, const Partition& lam,
                   int m_cutoff = 1);

// Shape of the RSK insertion tableau of a uniformly random permutation of
// {1..n} (Fisher-Yates from mt19937_64(seed)); first part = longest
// increasing subsequence length. Deterministic given the seed.
Partition sample_plancherel(int n, std::uint64_t seed);

// Draws n ~ Poisson(xi) by inversion from the same engine, then samples
// Plancherel(n).
Partition sample_poissonized(double xi, std::uint64_t seed);

} // namespace ranpart
