#pragma once

#include <gmpxx.h>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ranpart/errors.hpp"
#include "ranpart/halfint.hpp"
#include "ranpart/rational.hpp"

namespace ranpart {

// A partition: weakly decreasing positive parts, trailing zeros never stored.
class Partition {
  public:
    Partition() = default;
    explicit Partition(std::vector<int> parts); // validates monotonicity

    // Text format used everywhere: comma-separated parts, "" for the empty
    // partition, e.g. "8,5,4,2,2,1".
    static Partition parse(const std::string& text);

    const std::vector<int>& parts() const { return parts_; }
    int size() const { return size_; }                          // |lambda|
    int num_parts() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { // 0-based; 0 beyond the last row
        return i < num_parts() ? parts_[static_cast<size_t>(i)] : 0;
    }
    bool empty() const { return parts_.empty(); }

    std::string str() const;

    friend auto operator<=>(const Partition&, const Partition&) = default;

  private:
    std::vector<int> parts_;
    int size_ = 0;
};

// The particle configuration S(lambda) = {lambda_i - i + 1/2}, recorded as its
// finite deviation from the Dirac sea: the positive half-integers present and
// the negative half-integers missing. Both lists are sorted decreasing (the
// natural reading order of the lattice) and always have equal length.
struct ParticleSet {
    std::vector<Half> positives;
    std::vector<Half> negative_holes;
};

// All partitions of n in reverse-lexicographic order ((n) first, (1^n) last).
// Guarded by `limit` to keep accidental huge enumerations out.
std::vector<Partition> enumerate_partitions(int n, int limit = 60);

// Number of standard Young tableaux, by the hook-length product.
mpz_class dimension(const Partition& lam);

// Same number via the factorial/Vandermonde-style formula
//   |lam|! * prod_{i<j<=k}(lam_i - lam_j + j - i) / prod_{i<=k} (lam_i+k-i)!
// (k = number of rows). Kept public as a permanent cross-check.
mpz_class dimension_det(const Partition& lam);

// Number of growth paths from the empty partition to lam (adding one box at a
// time); equals dimension(lam). Exponential-state DP, intended for small lam.
mpz_class growth_paths(const Partition& lam);

struct HookArmLeg {
    int h, a, l;
};
// Hook, arm and leg of the cell (row, col), 1-based; h = 1 + a + l.
HookArmLeg hook_arm_leg(const Partition& lam, int row, int col);

ParticleSet particles(const Partition& lam);
Partition from_particles(const ParticleSet& ps);

// All ways to add (grow) or remove (shrink) one box.
std::vector<Partition> grow(const Partition& lam);
std::vector<Partition> shrink(const Partition& lam);

Partition transpose(const Partition& lam);

// Regularized power sum
//   p_k(lam) = sum_i [(lam_i-i+1/2)^k - (-i+1/2)^k] + (1 - 2^{-k}) zeta(-k),
// an exact rational.
mpq_class power_sum(int k, const Partition& lam);

// The regularized generating function sum_{s in S(lam)} e^{zs}, evaluated by
// finite head + geometric tail; equals 1/z + sum_k p_k(lam) z^k / k! near
// z = 0 and 1/(2 sinh(z/2)) for the empty partition. Throws NumericError at
// e^z = 1.
std::complex<double> power_series_E(const Partition& lam, std::complex<double> z);

// Conjugacy-class size |C_eta| in S(|eta|).
mpz_class conjugacy_class_size(const Partition& eta);

// Irreducible character chi^lam(eta) (Murnaghan-Nakayama over border strips).
mpz_class character(const Partition& lam, const Partition& eta);

// Central character f_eta(lam) = |C_eta| * chi^lam(eta) / dim lam.
mpq_class central_character(const Partition& eta, const Partition& lam);

// Oracle-grade partition count p(n) via Euler's pentagonal recurrence.
mpz_class partition_count(int n);

} // namespace ranpart
