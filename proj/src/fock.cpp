#include "ranpart/fock.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ranpart {

namespace {

// Occupancy test against the (positives, holes) representation.
bool occupied(const std::set<std::int64_t>& pos, const std::set<std::int64_t>& holes,
              std::int64_t twice) {
    if (twice > 0) return pos.count(twice) != 0;
    return holes.count(twice) == 0;
}

} // namespace

template <class Coeff>
FockVector<Coeff> apply_alpha(int n, const FockVector<Coeff>& v) {
    if (n == 0) throw ArgumentError("apply_alpha: n must be nonzero");
    FockVector<Coeff> out;
    out.e_max = v.e_max;
    out.truncated = v.truncated;

    for (const auto& [lam, coeff] : v.coeffs) {
        const int new_size = lam.size() - n; // alpha_n lowers the energy by n
        if (new_size < 0) continue;
        if (new_size > v.e_max) {
            out.truncated = true;
            continue;
        }
        const ParticleSet ps = particles(lam);
        std::set<std::int64_t> pos, holes;
        for (const Half& h : ps.positives) pos.insert(h.twice);
        for (const Half& h : ps.negative_holes) holes.insert(h.twice);

        // Candidate sources: explicit particles, sites n above a hole, and
        // (for raising moves) the shallow sea sites that can jump past zero.
        std::set<std::int64_t> sources;
        for (std::int64_t x : pos) sources.insert(x);
        for (std::int64_t h : holes) sources.insert(h + 2 * n);
        if (n < 0)
            for (std::int64_t x = -1; x > 2 * n; x -= 2) sources.insert(x);

        for (std::int64_t x : sources) {
            const std::int64_t t = x - 2 * n;
            if (!occupied(pos, holes, x) || occupied(pos, holes, t)) continue;
            int between = 0;
            for (std::int64_t s = std::min(x, t) + 2; s < std::max(x, t); s += 2)
                if (occupied(pos, holes, s)) ++between;
            const int sign = between % 2 == 0 ? 1 : -1;

            ParticleSet moved;
            for (std::int64_t p : pos)
                if (p != x) moved.positives.push_back(Half{p});
            if (t > 0) moved.positives.push_back(Half{t});
            for (std::int64_t h : holes)
                if (h != t) moved.negative_holes.push_back(Half{h});
            if (x < 0) moved.negative_holes.push_back(Half{x});
            std::sort(moved.positives.rbegin(), moved.positives.rend());
            std::sort(moved.negative_holes.rbegin(), moved.negative_holes.rend());

            const Partition mu = from_particles(moved);
            out.coeffs[mu] += Coeff(sign) * coeff;
        }
    }
    // Prune exact zeros so supports stay tight.
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = (it->second == Coeff(0)) ? out.coeffs.erase(it) : std::next(it);
    return out;
}

template FockQ apply_alpha<mpq_class>(int, const FockQ&);
template FockC apply_alpha<std::complex<double>>(int, const FockC&);
template FockVector<double> apply_alpha<double>(int, const FockVector<double>&);

FockC apply_E(std::complex<double> z, const FockC& v) {
    FockC out;
    out.e_max = v.e_max;
    out.truncated = v.truncated;
    for (const auto& [lam, coeff] : v.coeffs)
        out.coeffs.emplace(lam, coeff * power_series_E(lam, z));
    return out;
}

template <class Coeff>
Coeff inner(const FockVector<Coeff>& u, const FockVector<Coeff>& w) {
    Coeff acc(0);
    for (const auto& [lam, cu] : u.coeffs) {
        const auto it = w.coeffs.find(lam);
        if (it == w.coeffs.end()) continue;
        if constexpr (std::is_same_v<Coeff, std::complex<double>>)
            acc += cu * std::conj(it->second);
        else
            acc += cu * it->second;
    }
    return acc;
}

template mpq_class inner<mpq_class>(const FockQ&, const FockQ&);
template std::complex<double> inner<std::complex<double>>(const FockC&, const FockC&);

template <class Coeff>
double norm2(const FockVector<Coeff>& v) {
    double acc = 0.0;
    for (const auto& [lam, c] : v.coeffs) {
        if constexpr (std::is_same_v<Coeff, std::complex<double>>)
            acc += std::norm(c);
        else
            acc += mpq_class(c * c).get_d();
    }
    return acc;
}

template double norm2<mpq_class>(const FockQ&);
template double norm2<std::complex<double>>(const FockC&);

namespace {

FockC apply_scalar_exp(std::complex<double> c, int n, const FockC& v) {
    if (n <= 0) throw ArgumentError("ScalarExpAlpha: n must be positive");
    FockC acc = v;
    FockC term = v;
    const int max_j = v.e_max / n + 1;
    for (int j = 1; j <= max_j; ++j) {
        term = apply_alpha(-n, term);
        const std::complex<double> scale = c / static_cast<double>(j);
        for (auto& [lam, coeff] : term.coeffs) coeff *= scale;
        if (term.coeffs.empty()) break;
        for (const auto& [lam, coeff] : term.coeffs) acc.coeffs[lam] += coeff;
        acc.truncated = acc.truncated || term.truncated;
    }
    return acc;
}

} // namespace

FockC apply_word(const OperatorWord& word, FockC v) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        std::visit(
            [&v](const auto& atom) {
                using T = std::decay_t<decltype(atom)>;
                if constexpr (std::is_same_v<T, Alpha>)
                    v = apply_alpha(atom.n, v);
                else if constexpr (std::is_same_v<T, EInsertion>)
                    v = apply_E(atom.z, v);
                else
                    v = apply_scalar_exp(atom.c, atom.n, v);
            },
            *it);
    }
    return v;
}

namespace {

std::complex<double> run_word(const OperatorWord& word, int e_max, bool& truncated) {
    const FockC v = apply_word(word, vacuum<std::complex<double>>(e_max));
    truncated = v.truncated;
    const auto it = v.coeffs.find(Partition{});
    return it == v.coeffs.end() ? 0.0 : it->second;
}

} // namespace

Expectation vacuum_expectation(const OperatorWord& word, int e_max, double stability_tol) {
    Expectation ex;
    ex.value = run_word(word, e_max, ex.truncated);
    bool trunc_hi = false;
    const std::complex<double> hi = run_word(word, e_max + 5, trunc_hi);
    ex.drift = std::abs(ex.value - hi);
    ex.stable = ex.drift <= stability_tol * std::max(1.0, std::abs(ex.value));
    return ex;
}

std::vector<std::complex<double>> trace_weighted_coeffs(
    const std::vector<std::complex<double>>& zs, int e_max) {
    std::vector<std::complex<double>> c(static_cast<size_t>(e_max) + 1, 0.0);
    for (int d = 0; d <= e_max; ++d)
        for (const auto& lam : enumerate_partitions(d, std::max(60, e_max))) {
            std::complex<double> prod = 1.0;
            for (const auto& z : zs) prod *= power_series_E(lam, z);
            c[static_cast<size_t>(d)] += prod;
        }
    return c;
}

std::complex<double> trace_weighted(std::complex<double> q,
                                    const std::vector<std::complex<double>>& zs,
                                    int e_max) {
    if (std::abs(q) >= 1.0)
        throw ArgumentError("trace_weighted: need |q| < 1 for numeric evaluation");
    const auto c = trace_weighted_coeffs(zs, e_max);
    std::complex<double> acc = 0.0, qd = 1.0;
    for (const auto& cd : c) {
        acc += cd * qd;
        qd *= q;
    }
    return acc;
}

template <class Coeff>
Coeff schur_function(const Partition& lam, const std::vector<Coeff>& t) {
    FockVector<Coeff> v = vacuum<Coeff>(lam.size());
    for (int n = 1; n <= static_cast<int>(t.size()); ++n) {
        const Coeff tn = t[static_cast<size_t>(n - 1)];
        if (tn == Coeff(0)) continue;
        FockVector<Coeff> acc = v;
        FockVector<Coeff> term = v;
        for (int j = 1; j * n <= lam.size(); ++j) {
            term = apply_alpha(-n, term);
            for (auto& [mu, coeff] : term.coeffs) coeff *= tn / Coeff(j);
            if (term.coeffs.empty()) break;
            for (const auto& [mu, coeff] : term.coeffs) acc.coeffs[mu] += coeff;
        }
        v = std::move(acc);
    }
    const auto it = v.coeffs.find(lam);
    return it == v.coeffs.end() ? Coeff(0) : it->second;
}

template mpq_class schur_function<mpq_class>(const Partition&, const std::vector<mpq_class>&);
template std::complex<double> schur_function<std::complex<double>>(
    const Partition&, const std::vector<std::complex<double>>&);
template double schur_function<double>(const Partition&, const std::vector<double>&);

std::map<Partition, double> measure_from_vector(const FockC& v) {
    const double n2 = norm2(v);
    if (n2 <= 0.0) throw ArgumentError("measure_from_vector: zero vector");
    std::map<Partition, double> out;
    for (const auto& [lam, c] : v.coeffs) out.emplace(lam, std::norm(c) / n2);
    return out;
}

std::map<Partition, mpq_class> measure_from_vector_exact(const FockQ& v) {
    mpq_class n2 = 0;
    for (const auto& [lam, c] : v.coeffs) n2 += c * c;
    if (n2 == 0) throw ArgumentError("measure_from_vector: zero vector");
    std::map<Partition, mpq_class> out;
    for (const auto& [lam, c] : v.coeffs) {
        mpq_class p = c * c / n2;
        p.canonicalize();
        out.emplace(lam, std::move(p));
    }
    return out;
}

} // namespace ranpart
