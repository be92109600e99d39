#include "ranpart/gw.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <thread>
#include <utility>

#include "ranpart/errors.hpp"
#include "ranpart/fock.hpp"

namespace ranpart {

namespace {

// x^e for integer e of either sign; x must be nonzero when e < 0.
mpq_class mpq_pow_int(const mpq_class& x, int e) {
    if (e == 0) return mpq_class(1);
    mpz_class num = x.get_num();
    mpz_class den = x.get_den();
    if (e < 0) {
        if (num == 0) throw ArgumentError("mpq_pow_int: 0 to a negative power");
        std::swap(num, den);
        e = -e;
    }
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(e));
    mpq_class r(pn, pd);
    r.canonicalize();
    return r;
}

void check_gw_query(const char* who, const GWQuery& q) {
    if (q.degree < 0)
        throw ArgumentError(std::string(who) + ": degree must be >= 0");
    if (q.degree > 14)
        throw ResourceError(std::string(who) + ": degree exceeds bound 14");
    if (q.insertions.size() > 4)
        throw ResourceError(std::string(who) + ": more than 4 insertions");
    for (int k : q.insertions)
        if (k < 0)
            throw ArgumentError(std::string(who) +
                                ": insertion exponents must be >= 0");
    if (q.target_genus < 0)
        throw ArgumentError(std::string(who) + ": target genus must be >= 0");
}

// Contribution of one partition to the target sum: weight^{2-2g} times the
// product of regularized power sums (global 1/(k_i+1)! prefactor excluded).
mpq_class lambda_term(const Partition& lam, const GWQuery& q,
                      const mpz_class& dfact) {
    mpq_class w = mpq_class(dimension(lam)) / mpq_class(dfact);
    mpq_class term = mpq_pow_int(w, 2 - 2 * q.target_genus);
    for (int k : q.insertions) term *= power_sum(k + 1, lam);
    return term;
}

mpq_class insertion_prefactor(const GWQuery& q) {
    mpz_class denom = 1;
    for (int k : q.insertions) denom *= factorial(k + 1);
    return mpq_class(1) / mpq_class(denom);
}

// --- dense rational power series in one variable ----------------------------

using Series = std::vector<mpq_class>; // index = exponent, size = order + 1

Series series_mul(const Series& a, const Series& b, int order) {
    Series r(static_cast<std::size_t>(order) + 1, mpq_class(0));
    for (int i = 0; i <= order && i < static_cast<int>(a.size()); ++i) {
        if (a[static_cast<std::size_t>(i)] == 0) continue;
        const int jmax =
            std::min(order - i, static_cast<int>(b.size()) - 1);
        for (int j = 0; j <= jmax; ++j)
            r[static_cast<std::size_t>(i + j)] +=
                a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)];
    }
    return r;
}

Series series_inverse(const Series& f, int order) {
    if (f.empty() || f[0] == 0)
        throw ArgumentError("series_inverse: constant term vanishes");
    Series g(static_cast<std::size_t>(order) + 1, mpq_class(0));
    g[0] = mpq_class(1) / f[0];
    for (int m = 1; m <= order; ++m) {
        mpq_class acc = 0;
        const int imax = std::min(m, static_cast<int>(f.size()) - 1);
        for (int i = 1; i <= imax; ++i)
            acc += f[static_cast<std::size_t>(i)] *
                   g[static_cast<std::size_t>(m - i)];
        g[static_cast<std::size_t>(m)] = -acc / f[0];
    }
    return g;
}

// S(z) = sinh(z/2)/(z/2) = Sum_m z^{2m} / (4^m (2m+1)!), through z^order.
Series sinh_ratio_series(int order) {
    Series s(static_cast<std::size_t>(order) + 1, mpq_class(0));
    mpz_class four_pow = 1;
    for (int m = 0; 2 * m <= order; ++m) {
        s[static_cast<std::size_t>(2 * m)] =
            mpq_class(1) / mpq_class(four_pow * factorial(2 * m + 1));
        four_pow *= 4;
    }
    return s;
}

// --- permutation plumbing for the brute-force cover count -------------------

using Perm = std::vector<int>;

Perm compose(const Perm& p, const Perm& q) { // apply q, then p
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[i] = p[static_cast<std::size_t>(q[i])];
    return r;
}

Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
}

Partition cycle_type(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<int> lens;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(p[j]);
            ++len;
        }
        lens.push_back(len);
    }
    std::sort(lens.begin(), lens.end(), std::greater<int>());
    return Partition(std::move(lens));
}

void check_hurwitz_query(const char* who, const HurwitzQuery& q) {
    if (q.degree < 1)
        throw ArgumentError(std::string(who) + ": degree must be >= 1");
    if (q.base_genus < 0)
        throw ArgumentError(std::string(who) + ": base genus must be >= 0");
    for (std::size_t i = 0; i < q.branch_data.size(); ++i)
        if (q.branch_data[i].size() != q.degree)
            throw ArgumentError(std::string(who) + ": branch datum " +
                                std::to_string(i) + " is a partition of " +
                                std::to_string(q.branch_data[i].size()) +
                                ", not of the degree " +
                                std::to_string(q.degree));
}

} // namespace

mpq_class gw_stationary_target(const GWQuery& q) {
    check_gw_query("gw_stationary_target", q);
    const mpz_class dfact = factorial(q.degree);
    mpq_class sum = 0;
    for (const Partition& lam : enumerate_partitions(q.degree))
        sum += lambda_term(lam, q, dfact);
    return sum * insertion_prefactor(q);
}

mpq_class gw_stationary_target_parallel(const GWQuery& q, int threads) {
    check_gw_query("gw_stationary_target_parallel", q);
    if (threads < 1 || threads > 16)
        throw ArgumentError(
            "gw_stationary_target_parallel: threads must be in 1..16");
    const mpz_class dfact = factorial(q.degree);
    const std::vector<Partition> lams = enumerate_partitions(q.degree);
    std::vector<mpq_class> partial(static_cast<std::size_t>(threads),
                                   mpq_class(0));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            mpq_class acc = 0;
            for (std::size_t i = static_cast<std::size_t>(t); i < lams.size();
                 i += static_cast<std::size_t>(threads))
                acc += lambda_term(lams[i], q, dfact);
            partial[static_cast<std::size_t>(t)] = acc;
        });
    }
    for (auto& th : pool) th.join();
    mpq_class sum = 0;
    for (const mpq_class& p : partial) sum += p;
    return sum * insertion_prefactor(q);
}

mpq_class gw_stationary(const GWQuery& q) {
    if (q.target_genus != 0)
        throw ArgumentError("gw_stationary: query must have target genus 0");
    check_gw_query("gw_stationary", q);
    return gw_stationary_target(q);
}

mpq_class GWSeries::coefficient(const std::vector<int>& exponents) const {
    if (static_cast<int>(exponents.size()) != num_vars)
        throw ArgumentError("GWSeries::coefficient: wrong number of exponents");
    for (int e : exponents)
        if (e < -1 || e > order)
            throw ArgumentError(
                "GWSeries::coefficient: exponent outside -1..order");
    const auto it = coeffs.find(exponents);
    return it == coeffs.end() ? mpq_class(0) : it->second;
}

GWSeries gw_generating(int degree, int num_insertions, int order) {
    if (degree < 0)
        throw ArgumentError("gw_generating: degree must be >= 0");
    if (degree > 8)
        throw ResourceError("gw_generating: degree exceeds bound 8");
    if (num_insertions < 0)
        throw ArgumentError("gw_generating: num_insertions must be >= 0");
    if (num_insertions > 4)
        throw ResourceError("gw_generating: more than 4 insertions");
    if (order < 0) throw ArgumentError("gw_generating: order must be >= 0");
    if (order > 16) throw ResourceError("gw_generating: order exceeds 16");
    double cost = 1.0;
    for (int i = 0; i < num_insertions; ++i) cost *= order + 2;
    if (cost > 2.0e5)
        throw ResourceError("gw_generating: (order+2)^n exceeds 2e5");

    // alpha_{-1}^degree on the vacuum; every application raises the energy by
    // exactly one, so e_max = degree is lossless.
    FockQ v = vacuum<mpq_class>(degree);
    for (int i = 0; i < degree; ++i) v = apply_alpha(-1, v);
    if (v.truncated)
        throw InvariantError("gw_generating: ladder state truncated");

    const mpq_class dfact(factorial(degree));
    GWSeries out;
    out.num_vars = num_insertions;
    out.order = order;

    std::vector<int> digits(static_cast<std::size_t>(num_insertions), 0);
    for (const auto& [lam, c] : v.coeffs) {
        if (lam.size() != degree)
            throw InvariantError("gw_generating: state off the energy shell");
        const mpq_class scaled = (c / dfact) * (c / dfact);
        // eigencoeffs[j]: j = 0 is the 1/z term, j = k+1 holds p_k / k!.
        // p_0 vanishes identically (the finite sum and the regularized sea
        // both contribute zero at z^0), so the k = 0 slot is hard zero.
        std::vector<mpq_class> eigen(static_cast<std::size_t>(order) + 2);
        eigen[0] = 1;
        eigen[1] = 0;
        for (int k = 1; k <= order; ++k)
            eigen[static_cast<std::size_t>(k) + 1] =
                power_sum(k, lam) / mpq_class(factorial(k));
        std::fill(digits.begin(), digits.end(), 0);
        while (true) {
            mpq_class term = scaled;
            for (int i = 0; i < num_insertions; ++i)
                term *= eigen[static_cast<std::size_t>(digits[
                    static_cast<std::size_t>(i)])];
            if (term != 0) {
                std::vector<int> key(static_cast<std::size_t>(num_insertions));
                for (int i = 0; i < num_insertions; ++i)
                    key[static_cast<std::size_t>(i)] =
                        digits[static_cast<std::size_t>(i)] - 1;
                out.coeffs[key] += term;
            }
            int pos = 0;
            while (pos < num_insertions) {
                if (++digits[static_cast<std::size_t>(pos)] <= order + 1) break;
                digits[static_cast<std::size_t>(pos)] = 0;
                ++pos;
            }
            if (pos == num_insertions) break;
        }
    }
    for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
        it = (it->second == 0) ? out.coeffs.erase(it) : std::next(it);
    return out;
}

std::vector<mpq_class> connected_1pt(int degree, int g_max) {
    if (degree < 0)
        throw ArgumentError("connected_1pt: degree must be >= 0");
    if (degree > 14)
        throw ResourceError("connected_1pt: degree exceeds bound 14");
    if (g_max < 0) throw ArgumentError("connected_1pt: g_max must be >= 0");
    if (g_max > 32) throw ResourceError("connected_1pt: g_max exceeds 32");

    // Route (a): S(z)^{2 degree - 1} / (degree!)^2 through z^{2 g_max}.
    const int order = 2 * g_max;
    const Series s = sinh_ratio_series(order);
    Series powser(static_cast<std::size_t>(order) + 1, mpq_class(0));
    powser[0] = 1;
    if (degree == 0) {
        powser = series_inverse(s, order);
    } else {
        for (int i = 0; i < 2 * degree - 1; ++i)
            powser = series_mul(powser, s, order);
    }
    const mpq_class dfact(factorial(degree));
    std::vector<mpq_class> route_a(static_cast<std::size_t>(g_max) + 1);
    for (int g = 0; g <= g_max; ++g)
        route_a[static_cast<std::size_t>(g)] =
            powser[static_cast<std::size_t>(2 * g)] / (dfact * dfact);

    // Route (b): invert the one-point factorization of the disconnected
    // values, <tau_k>_e = Sum_{e' <= e} <tau_k>^o_{e'} / (e-e')!.
    for (int g = 0; g <= g_max; ++g) {
        const int k = 2 * g - 2 + 2 * degree;
        if (k < 0) continue; // formal unit term of 1/S; no disconnected query
        std::vector<mpq_class> conn(static_cast<std::size_t>(degree) + 1);
        for (int e = 0; e <= degree; ++e) {
            GWQuery q;
            q.degree = e;
            q.insertions = {k};
            mpq_class c = gw_stationary(q);
            for (int ep = 0; ep < e; ++ep)
                c -= conn[static_cast<std::size_t>(ep)] /
                     mpq_class(factorial(e - ep));
            conn[static_cast<std::size_t>(e)] = c;
        }
        if (conn[static_cast<std::size_t>(degree)] !=
            route_a[static_cast<std::size_t>(g)])
            throw InvariantError(
                "connected_1pt: series route and factorization route disagree "
                "at genus " +
                std::to_string(g));
    }
    return route_a;
}

mpq_class hurwitz_count(const HurwitzQuery& q) {
    check_hurwitz_query("hurwitz_count", q);
    if (q.degree > 10)
        throw ResourceError("hurwitz_count: degree exceeds bound 10");
    if (q.branch_data.size() > 6)
        throw ResourceError("hurwitz_count: more than 6 branch points");
    const mpq_class dfact(factorial(q.degree));
    mpq_class sum = 0;
    for (const Partition& lam : enumerate_partitions(q.degree)) {
        mpq_class term =
            mpq_pow_int(mpq_class(dimension(lam)) / dfact, 2 - 2 * q.base_genus);
        for (const Partition& eta : q.branch_data)
            term *= central_character(eta, lam);
        sum += term;
    }
    return sum;
}

mpq_class hurwitz_brute(const HurwitzQuery& q) {
    check_hurwitz_query("hurwitz_brute", q);
    if (q.degree > 5)
        throw ResourceError("hurwitz_brute: degree exceeds bound 5");
    const int d = q.degree;
    const int g = q.base_genus;
    const int n = static_cast<int>(q.branch_data.size());

    // Free slots: 2g commutator entries over all of S_d and the first n-1
    // ramification entries over their classes; the last one is determined.
    mpz_class tuples = 1;
    const mpz_class dfact = factorial(d);
    for (int j = 0; j < 2 * g; ++j) tuples *= dfact;
    for (int i = 0; i + 1 < n; ++i)
        tuples *= conjugacy_class_size(q.branch_data[static_cast<std::size_t>(i)]);
    if (tuples > 100000000)
        throw ResourceError("hurwitz_brute: enumeration exceeds 1e8 tuples");

    std::vector<Perm> perms;
    Perm base(static_cast<std::size_t>(d));
    std::iota(base.begin(), base.end(), 0);
    do {
        perms.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    std::vector<std::vector<const Perm*>> members(
        static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (const Perm& p : perms)
            if (cycle_type(p) == q.branch_data[static_cast<std::size_t>(i)])
                members[static_cast<std::size_t>(i)].push_back(&p);

    Perm id(static_cast<std::size_t>(d));
    std::iota(id.begin(), id.end(), 0);
    unsigned long count = 0;

    // depth 0..2g-1: commutator pairs laid down one permutation at a time
    // (even depth picks a, odd depth completes [a,b]); depth 2g..2g+n-2: the
    // free ramification entries; then close the relation.
    std::vector<Perm> stack_a(static_cast<std::size_t>(g));
    auto rec = [&](auto&& self, int depth, const Perm& prefix) -> void {
        if (depth < 2 * g) {
            const int pair = depth / 2;
            if (depth % 2 == 0) {
                for (const Perm& a : perms) {
                    stack_a[static_cast<std::size_t>(pair)] = a;
                    self(self, depth + 1, prefix);
                }
            } else {
                const Perm& a = stack_a[static_cast<std::size_t>(pair)];
                for (const Perm& b : perms) {
                    const Perm comm = compose(
                        compose(a, b), compose(inverse(a), inverse(b)));
                    self(self, depth + 1, compose(prefix, comm));
                }
            }
            return;
        }
        const int slot = depth - 2 * g;
        if (slot < n - 1) {
            for (const Perm* s : members[static_cast<std::size_t>(slot)])
                self(self, depth + 1, compose(prefix, *s));
            return;
        }
        if (n == 0) {
            if (prefix == id) ++count;
            return;
        }
        // the last entry must be prefix^{-1}; it only has to lie in its class
        if (cycle_type(inverse(prefix)) ==
            q.branch_data[static_cast<std::size_t>(n - 1)])
            ++count;
    };
    rec(rec, 0, id);
    return mpq_class(count) / mpq_class(dfact);
}

std::vector<std::complex<double>> elliptic_series(
    const std::vector<std::complex<double>>& zs, int q_order) {
    if (q_order < 0)
        throw ArgumentError("elliptic_series: q_order must be >= 0");
    if (q_order > 40)
        throw ResourceError("elliptic_series: q_order exceeds bound 40");
    return trace_weighted_coeffs(zs, q_order);
}

} // namespace ranpart
