#include "ranpart/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ranpart/errors.hpp"
#include "ranpart/fock.hpp"
#include "ranpart/rational.hpp"

namespace ranpart {

namespace {

// (dim lambda / |lambda|!)^2 as an exact rational, converted once.
mpq_class plancherel_core(const Partition& lam) {
    const mpz_class d = dimension(lam);
    const mpz_class f = factorial(lam.size());
    mpq_class q(d * d, f * f);
    q.canonicalize(); // two-argument mpq_class does not reduce on its own
    return q;
}

double schur_log_z(const std::vector<double>& t, const std::vector<double>& tbar) {
    double acc = 0.0;
    const size_t m = std::max(t.size(), tbar.size());
    for (size_t k = 1; k <= m; ++k) {
        const double a = k <= t.size() ? t[k - 1] : 0.0;
        const double b = k <= tbar.size() ? tbar[k - 1] : 0.0;
        acc += static_cast<double>(k) * a * b;
    }
    return acc;
}

mpq_class jack_weight(const JackSpec& s, const Partition& lam) {
    if (lam.size() != s.d)
        throw ArgumentError("Jack weight: |lambda| must equal d");
    mpq_class w = 1;
    for (int i = 1; i <= lam.num_parts(); ++i)
        for (int j = 1; j <= lam.part(i - 1); ++j) {
            const auto al = hook_arm_leg(lam, i, j);
            const mpq_class f1 = mpq_class(al.a + 1) * s.eps1 + mpq_class(al.l) * s.eps2;
            const mpq_class f2 = mpq_class(al.a) * s.eps1 + mpq_class(al.l + 1) * s.eps2;
            if (f1 == 0 || f2 == 0)
                throw NumericError("Jack weight: vanishing hook factor at these eps");
            w /= f1 * f2;
        }
    return w;
}

// Upper bound on sum_{n > cap} x^n / n! for x >= 0 (geometric tail of the
// exponential series; finite when cap + 2 > x).
double exp_series_tail(double x, int cap) {
    if (x <= 0.0) return 0.0;
    double term = 1.0;
    for (int k = 1; k <= cap + 1; ++k) term *= x / k;
    const double ratio = x / (cap + 2);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return term / (1.0 - ratio);
}

double uniform_unit(std::mt19937_64& eng) {
    // Top 53 bits -> [0,1); fixed mapping so every platform draws the same
    // stream (std::uniform_real_distribution is implementation-defined).
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t bound) {
    // Plain modulo reduction: bias is < bound / 2^64 (negligible for the
    // bounds used here) and the mapping is identical on every platform.
    return eng() % bound;
}

Partition rsk_shape(const std::vector<int>& word) {
    std::vector<std::vector<int>> rows;
    for (const int v : word) {
        int carry = v;
        for (size_t r = 0;; ++r) {
            if (r == rows.size()) {
                rows.emplace_back(1, carry);
                break;
            }
            auto& row = rows[r];
            const auto it = std::upper_bound(row.begin(), row.end(), carry);
            if (it == row.end()) {
                row.push_back(carry);
                break;
            }
            std::swap(*it, carry);
        }
    }
    std::vector<int> parts(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) parts[r] = static_cast<int>(rows[r].size());
    return Partition(parts);
}

Partition plancherel_with_engine(int n, std::mt19937_64& eng) {
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = n - 1; i > 0; --i) {
        const auto j = uniform_below(eng, static_cast<std::uint64_t>(i) + 1);
        std::swap(perm[static_cast<size_t>(i)], perm[j]);
    }
    return rsk_shape(perm);
}

int poisson_inversion(double xi, std::mt19937_64& eng) {
    // Requires xi small enough that exp(-xi) does not underflow.
    const double u = uniform_unit(eng);
    double p = std::exp(-xi);
    double cum = p;
    int k = 0;
    const int cap = static_cast<int>(xi + 40.0 * std::sqrt(xi + 1.0) + 100.0);
    while (u >= cum && k < cap) {
        ++k;
        p *= xi / k;
        cum += p;
    }
    return k;
}

constexpr int kMaxSampleSize = 1'000'000;

} // namespace

void validate(const MeasureSpec& spec) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PlancherelSpec>) {
                if (s.n < 0) throw ArgumentError("Plancherel: n must be >= 0");
            } else if constexpr (std::is_same_v<T, PoissonizedPlancherelSpec>) {
                if (!(s.xi > 0.0))
                    throw ArgumentError("PoissonizedPlancherel: xi must be > 0");
            } else if constexpr (std::is_same_v<T, JackSpec>) {
                if (s.eps1 * s.eps2 == 0)
                    throw ArgumentError("Jack: eps1 * eps2 must be nonzero");
                if (s.d < 0) throw ArgumentError("Jack: d must be >= 0");
            } else if constexpr (std::is_same_v<T, PeriodicSpec>) {
                if (s.u.empty()) throw ArgumentError("Periodic: u must be nonempty");
                mpq_class total = 0;
                for (const auto& v : s.u) total += v;
                if (total != 0)
                    throw ArgumentError("Periodic: potentials must sum to 0 exactly");
                if (!(s.xi > 0.0) || !(s.hbar > 0.0))
                    throw ArgumentError("Periodic: xi and hbar must be > 0");
            } else {
                static_assert(std::is_same_v<T, SchurSpec>);
            }
        },
        spec);
}

double weight(const MeasureSpec& spec, const Partition& lam) {
    validate(spec);
    return std::visit(
        [&lam](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PlancherelSpec>) {
                if (lam.size() != s.n)
                    throw ArgumentError("Plancherel weight: |lambda| must equal n");
                return mpq_class(plancherel_core(lam) * factorial(s.n)).get_d();
            } else if constexpr (std::is_same_v<T, PoissonizedPlancherelSpec>) {
                return std::exp(-s.xi) * std::pow(s.xi, lam.size()) *
                       plancherel_core(lam).get_d();
            } else if constexpr (std::is_same_v<T, SchurSpec>) {
                const double sl = schur_function<double>(lam, s.t);
                const double sr = schur_function<double>(lam, s.tbar);
                return sl * sr * std::exp(-schur_log_z(s.t, s.tbar));
            } else if constexpr (std::is_same_v<T, JackSpec>) {
                return jack_weight(s, lam).get_d();
            } else {
                const int n = static_cast<int>(s.u.size());
                const mpq_class u_val = energy_U(s.u, lam);
                (void)n;
                return std::pow(s.xi, lam.size()) *
                       std::exp(u_val.get_d() / s.hbar) * plancherel_core(lam).get_d();
            }
        },
        spec);
}

mpq_class weight_exact(const MeasureSpec& spec, const Partition& lam) {
    validate(spec);
    if (const auto* p = std::get_if<PlancherelSpec>(&spec)) {
        if (lam.size() != p->n)
            throw ArgumentError("Plancherel weight: |lambda| must equal n");
        return plancherel_core(lam) * factorial(p->n);
    }
    if (const auto* j = std::get_if<JackSpec>(&spec)) return jack_weight(*j, lam);
    throw ArgumentError("exact weights exist only for the rational families "
                        "(Plancherel, Jack)");
}

ZResult partition_function(const MeasureSpec& spec, int truncation) {
    validate(spec);
    if (truncation < 0) throw ArgumentError("partition_function: truncation < 0");
    ZResult out;
    if (std::holds_alternative<PlancherelSpec>(spec)) {
        out.value = 1.0;
        out.exact = mpq_class(1);
        return out;
    }
    if (const auto* pp = std::get_if<PoissonizedPlancherelSpec>(&spec)) {
        // Normalized weights; grouped by size the sum is e^{-xi} sum xi^n/n!.
        double acc = 0.0;
        double term = std::exp(-pp->xi);
        for (int n = 0; n <= truncation; ++n) {
            acc += term;
            term *= pp->xi / (n + 1);
        }
        out.value = acc;
        out.tail_bound = std::exp(-pp->xi) * exp_series_tail(pp->xi, truncation);
        return out;
    }
    if (const auto* sc = std::get_if<SchurSpec>(&spec)) {
        out.value = std::exp(schur_log_z(sc->t, sc->tbar));
        return out;
    }
    if (const auto* j = std::get_if<JackSpec>(&spec)) {
        mpq_class acc = 0;
        for (const auto& lam : enumerate_partitions(j->d)) acc += jack_weight(*j, lam);
        const mpq_class expected =
            1 / (mpq_class(factorial(j->d)) * pow_q(j->eps1 * j->eps2, j->d));
        if (acc != expected)
            throw InvariantError("Jack partition function failed its closed-form check");
        out.value = acc.get_d();
        out.exact = acc;
        return out;
    }
    const auto& per = std::get<PeriodicSpec>(spec);
    double acc = 0.0;
    for (int n = 0; n <= truncation; ++n)
        for (const auto& lam : enumerate_partitions(n))
            acc += weight(spec, lam);
    // |U(lambda)| <= 2 |lambda| max|u|: at most |lambda| particles moved, each
    // exchanging two potential values. Hence weight <= (xi e^{c/hbar})^n / n!
    // summed over dimensions (Burnside collapses the dim^2/n!^2 factor).
    mpq_class umax = 0;
    for (const auto& v : per.u) umax = std::max(umax, mpq_class(abs(v)));
    const double boosted = per.xi * std::exp(2.0 * umax.get_d() / per.hbar);
    out.value = acc;
    out.tail_bound = exp_series_tail(boosted, truncation);
    return out;
}

double expected_size_schur(const std::vector<double>& t,
                           const std::vector<double>& tbar) {
    double acc = 0.0;
    const size_t m = std::max(t.size(), tbar.size());
    for (size_t k = 1; k <= m; ++k) {
        const double a = k <= t.size() ? t[k - 1] : 0.0;
        const double b = k <= tbar.size() ? tbar[k - 1] : 0.0;
        acc += static_cast<double>(k) * static_cast<double>(k) * a * b;
    }
    return acc;
}

mpq_class energy_U(const std::vector<mpq_class>& u, const Partition& lam,
                   int m_cutoff) {
    const int n = static_cast<int>(u.size());
    if (n == 0) throw ArgumentError("energy_U: empty potential");
    mpq_class total = 0;
    for (const auto& v : u) total += v;
    if (total != 0) throw ArgumentError("energy_U: potentials must sum to 0");
    int m = std::max(m_cutoff, 1);
    while (m * n <= lam.num_parts()) ++m; // -MN below every displaced particle
    mpq_class acc = 0;
    for (int i = 1; i <= m * n; ++i) {
        const long t = 2L * (lam.part(i - 1) - i) + 1; // twice the particle position
        const long tm = ((t % (2L * n)) + 2L * n) % (2L * n); // odd, in [1, 2N-1]
        acc += u[static_cast<size_t>((tm - 1) / 2)];
    }
    return acc;
}

Partition sample_plancherel(int n, std::uint64_t seed) {
    if (n < 0) throw ArgumentError("sample_plancherel: n must be >= 0");
    if (n > kMaxSampleSize) throw ResourceError("sample_plancherel: n too large");
    std::mt19937_64 eng(seed);
    return plancherel_with_engine(n, eng);
}

Partition sample_poissonized(double xi, std::uint64_t seed) {
    if (!(xi > 0.0)) throw ArgumentError("sample_poissonized: xi must be > 0");
    if (xi > static_cast<double>(kMaxSampleSize))
        throw ResourceError("sample_poissonized: xi too large");
    std::mt19937_64 eng(seed);
    double rest = xi;
    long n = 0;
    // Split so inversion never underflows exp(-xi); Poisson additivity keeps
    // the law exact and the draw deterministic.
    while (rest > 500.0) {
        n += poisson_inversion(500.0, eng);
        rest -= 500.0;
    }
    n += poisson_inversion(rest, eng);
    if (n > kMaxSampleSize)
        throw ResourceError("sample_poissonized: drawn size exceeds the bound");
    return plancherel_with_engine(static_cast<int>(n), eng);
}

} // namespace ranpart
