#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "ranpart/gw.hpp"
#include "ranpart/partition.hpp"

using namespace ranpart;
using C = std::complex<double>;

namespace {

mpq_class pow_q(const mpq_class& x, int k) {
    mpq_class r = 1;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

mpz_class fact_z(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// zeta(-k) for the k we exercise, entered from the Bernoulli-number table by
// hand rather than computed, so this route shares nothing with the library.
mpq_class zeta_table(int k) {
    switch (k) {
        case 1: return mpq_class(-1, 12);
        case 3: return mpq_class(1, 120);
        case 5: return mpq_class(-1, 252);
        case 7: return mpq_class(1, 240);
        default: REQUIRE(k % 2 == 0); return mpq_class(0); // trivial zeros
    }
}

// Regularized power sum straight from its definition:
//   sum_i [(lambda_i - i + 1/2)^k - (-i + 1/2)^k] + (1 - 2^{-k}) zeta(-k).
mpq_class oracle_p(int k, const Partition& lam) {
    mpq_class acc = 0;
    for (int i = 1; i <= lam.num_parts(); ++i) {
        const mpq_class a(2 * (lam.part(i - 1) - i) + 1, 2);
        const mpq_class b(1 - 2 * i, 2);
        acc += pow_q(a, k) - pow_q(b, k);
    }
    const mpq_class two_pow = pow_q(mpq_class(2), k);
    acc += (1 - 1 / two_pow) * zeta_table(k);
    return acc;
}

mpq_class oracle_gw(int d, const std::vector<int>& ks) {
    const mpq_class dfact(fact_z(d));
    mpq_class sum = 0;
    for (const Partition& lam : enumerate_partitions(d)) {
        mpq_class term = mpq_class(dimension(lam)) / dfact;
        term *= term;
        for (int k : ks) term *= oracle_p(k + 1, lam);
        sum += term;
    }
    for (int k : ks) sum /= mpq_class(fact_z(k + 1));
    return sum;
}

} // namespace

TEST_CASE("gw_stationary: anchors and the zeta-regularized oracle") {
    SUBCASE("signature values, exact") {
        CHECK(gw_stationary({0, {0}, 0}) == mpq_class(-1, 24));
        CHECK(gw_stationary({1, {0}, 0}) == mpq_class(23, 24));
        CHECK(gw_stationary({2, {}, 0}) == mpq_class(1, 2));
        CHECK(gw_stationary({1, {2}, 0}) == mpq_class(247, 5760));
    }
    SUBCASE("oracle agreement over a query battery") {
        const std::vector<std::vector<int>> batteries{
            {}, {0}, {2}, {6}, {0, 0}, {1, 3}, {2, 2}, {0, 1, 2}};
        for (int d = 0; d <= 5; ++d)
            for (const auto& ks : batteries)
                CHECK(gw_stationary({d, ks, 0}) == oracle_gw(d, ks));
    }
    SUBCASE("dimension-parity vanishing: odd sum(k_i) - 2d + 2") {
        CHECK(gw_stationary({1, {1}, 0}) == 0);
        CHECK(gw_stationary({2, {3}, 0}) == 0);
        CHECK(gw_stationary({2, {1, 2}, 0}) == 0);
        CHECK(gw_stationary({3, {0, 0, 1}, 0}) == 0);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(gw_stationary({1, {0}, 1}), ArgumentError);
        CHECK_THROWS_AS(gw_stationary({-1, {}, 0}), ArgumentError);
        CHECK_THROWS_AS(gw_stationary({1, {-1}, 0}), ArgumentError);
        CHECK_THROWS_AS(gw_stationary({15, {}, 0}), ResourceError);
        CHECK_THROWS_AS(gw_stationary({1, {0, 0, 0, 0, 0}, 0}),
                        ResourceError);
    }
}

TEST_CASE("gw_stationary_target: genus weights and parallel reduction") {
    SUBCASE("torus target is the uniform measure: p(d) with no insertions") {
        for (int d = 0; d <= 10; ++d)
            CHECK(gw_stationary_target({d, {}, 1}) ==
                  mpq_class(partition_count(d)));
    }
    SUBCASE("genus 0 reduces to gw_stationary") {
        for (int d = 0; d <= 4; ++d)
            for (const auto& ks :
                 std::vector<std::vector<int>>{{}, {0}, {1, 3}})
                CHECK(gw_stationary_target({d, ks, 0}) ==
                      gw_stationary({d, ks, 0}));
    }
    SUBCASE("genus 2: inverse-square dimension weights") {
        CHECK(gw_stationary_target({2, {}, 2}) == 8);
    }
    SUBCASE("torus target with one insertion, against the raw sum") {
        for (int d = 0; d <= 4; ++d) {
            mpq_class expect = 0;
            for (const Partition& lam : enumerate_partitions(d))
                expect += oracle_p(2, lam);
            expect /= mpq_class(fact_z(2));
            CHECK(gw_stationary_target({d, {1}, 1}) == expect);
        }
    }
    SUBCASE("split reduction is bit-identical to the serial sum") {
        const std::vector<GWQuery> qs{
            {6, {0, 2}, 0}, {9, {}, 1}, {5, {1}, 2}, {0, {0}, 0}};
        for (const auto& q : qs) {
            const mpq_class serial = gw_stationary_target(q);
            for (int threads : {2, 3, 5})
                CHECK(gw_stationary_target_parallel(q, threads) == serial);
        }
        CHECK_THROWS_AS(gw_stationary_target_parallel({1, {}, 0}, 0),
                        ArgumentError);
    }
}

TEST_CASE("gw_generating: ladder-state series vs dimension-formula route") {
    SUBCASE("one insertion at d = 1") {
        const auto s = gw_generating(1, 1, 4);
        CHECK(s.coefficient({1}) == mpq_class(23, 24));
        CHECK(s.coefficient({3}) == mpq_class(247, 5760));
        CHECK(s.coefficient({-1}) == 1);  // the 1/z slot carries Z(1) = 1
        CHECK(s.coefficient({0}) == 0);   // p_0 vanishes identically
        CHECK(s.coefficient({2}) == 0);   // parity
    }
    SUBCASE("vacuum degree: d = 0") {
        const auto s = gw_generating(0, 1, 4);
        CHECK(s.coefficient({1}) == mpq_class(-1, 24));
        CHECK(s.coefficient({-1}) == 1);
        CHECK(s.coefficient({3}) == mpq_class(7, 5760));
    }
    SUBCASE("no insertions: the vacuum factor Z(d) = 1/d!") {
        for (int d = 0; d <= 5; ++d)
            CHECK(gw_generating(d, 0, 0).coefficient({}) ==
                  mpq_class(1) / mpq_class(fact_z(d)));
    }
    SUBCASE("cross-route identity, d <= 4 and sum(k_i + 1) <= 8") {
        for (int d = 0; d <= 4; ++d) {
            const auto s1 = gw_generating(d, 1, 8);
            for (int k = 0; k + 1 <= 8; ++k)
                CHECK(s1.coefficient({k + 1}) == gw_stationary({d, {k}, 0}));
            const auto s2 = gw_generating(d, 2, 7);
            for (int k1 = 0; k1 <= 5; ++k1)
                for (int k2 = 0; k1 + k2 + 2 <= 8; ++k2)
                    CHECK(s2.coefficient({k1 + 1, k2 + 1}) ==
                          gw_stationary({d, {k1, k2}, 0}));
        }
    }
    SUBCASE("the -1/-1 slot of two insertions still sums the squared weights") {
        const auto s = gw_generating(3, 2, 2);
        CHECK(s.coefficient({-1, -1}) == mpq_class(1, 6));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(gw_generating(9, 1, 4), ResourceError);
        CHECK_THROWS_AS(gw_generating(1, 5, 4), ResourceError);
        CHECK_THROWS_AS(gw_generating(1, 1, 17), ResourceError);
        CHECK_THROWS_AS(gw_generating(-1, 1, 4), ArgumentError);
        CHECK_THROWS_AS(gw_generating(1, 1, 4).coefficient({1, 1}),
                        ArgumentError);
        CHECK_THROWS_AS(gw_generating(1, 1, 4).coefficient({5}),
                        ArgumentError);
    }
}

TEST_CASE("connected_1pt: routes agree and match frozen series") {
    SUBCASE("route agreement for d <= 4, g <= 3 (throws on mismatch)") {
        for (int d = 0; d <= 4; ++d) CHECK_NOTHROW(connected_1pt(d, 3));
    }
    SUBCASE("d = 1: the sinh ratio itself") {
        const auto c = connected_1pt(1, 3);
        REQUIRE(c.size() == 4);
        CHECK(c[0] == 1);
        CHECK(c[1] == mpq_class(1, 24));
        CHECK(c[2] == mpq_class(1, 1920));
        CHECK(c[3] == mpq_class(1, 322560));
    }
    SUBCASE("d = 0: the reciprocal series (constant maps)") {
        const auto c = connected_1pt(0, 3);
        REQUIRE(c.size() == 4);
        CHECK(c[0] == 1); // formal unit term
        CHECK(c[1] == mpq_class(-1, 24));
        CHECK(c[2] == mpq_class(7, 5760));
        CHECK(c[3] == mpq_class(-31, 967680));
    }
    SUBCASE("d = 2, genus 0") {
        CHECK(connected_1pt(2, 0)[0] == mpq_class(1, 4));
    }
    SUBCASE("connected + constant-map factorization rebuilds 23/24") {
        const mpq_class conn_d1 = connected_1pt(1, 0)[0];
        const mpq_class conn_d0 = connected_1pt(0, 1)[1];
        CHECK(conn_d1 + conn_d0 == gw_stationary({1, {0}, 0}));
        CHECK(conn_d1 + conn_d0 == mpq_class(23, 24));
    }
    SUBCASE("vacuum factor from the partition sum: Z(e) = 1/e!") {
        for (int e = 0; e <= 10; ++e)
            CHECK(gw_stationary({e, {}, 0}) ==
                  mpq_class(1) / mpq_class(fact_z(e)));
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(connected_1pt(-1, 1), ArgumentError);
        CHECK_THROWS_AS(connected_1pt(1, -1), ArgumentError);
        CHECK_THROWS_AS(connected_1pt(15, 1), ResourceError);
        CHECK_THROWS_AS(connected_1pt(1, 33), ResourceError);
    }
}

TEST_CASE("hurwitz_count vs hurwitz_brute and closed-form counts") {
    SUBCASE("sphere anchors") {
        CHECK(hurwitz_count({1, 0, {}}) == 1);
        CHECK(hurwitz_count({2, 0, {Partition({2}), Partition({2})}}) ==
              mpq_class(1, 2));
        CHECK(hurwitz_count({3, 0, {Partition({2, 1}), Partition({2, 1})}}) ==
              mpq_class(1, 2));
        CHECK(hurwitz_count(
                  {3, 0, {Partition({3}), Partition({3}), Partition({3})}}) ==
              mpq_class(1, 3));
        // parity: three transpositions cannot multiply to the identity
        CHECK(hurwitz_count({3, 0,
                             {Partition({2, 1}), Partition({2, 1}),
                              Partition({2, 1})}}) == 0);
    }
    SUBCASE("torus counts are partition counts") {
        for (int d = 1; d <= 10; ++d) {
            CHECK(hurwitz_count({d, 1, {}}) == mpq_class(partition_count(d)));
            // a trivial branch point (identity class) changes nothing
            std::vector<int> ones(static_cast<std::size_t>(d), 1);
            CHECK(hurwitz_count({d, 1, {Partition(ones)}}) ==
                  mpq_class(partition_count(d)));
        }
    }
    SUBCASE("brute enumeration agrees on every torus query, d <= 4") {
        for (int d = 1; d <= 4; ++d) {
            CHECK(hurwitz_brute({d, 1, {}}) == hurwitz_count({d, 1, {}}));
            for (const Partition& eta : enumerate_partitions(d))
                CHECK(hurwitz_brute({d, 1, {eta}}) ==
                      hurwitz_count({d, 1, {eta}}));
        }
    }
    SUBCASE("brute enumeration agrees on sphere and genus-2 queries") {
        CHECK(hurwitz_brute({2, 0, {Partition({2}), Partition({2})}}) ==
              mpq_class(1, 2));
        CHECK(hurwitz_brute({3, 0, {Partition({2, 1}), Partition({2, 1})}}) ==
              mpq_class(1, 2));
        CHECK(hurwitz_brute(
                  {3, 0, {Partition({3}), Partition({3}), Partition({3})}}) ==
              mpq_class(1, 3));
        CHECK(hurwitz_brute({4, 0, {Partition({2, 1, 1}),
                                    Partition({2, 1, 1})}}) ==
              hurwitz_count({4, 0, {Partition({2, 1, 1}),
                                    Partition({2, 1, 1})}}));
        CHECK(hurwitz_brute({2, 2, {}}) == 8);
        CHECK(hurwitz_count({2, 2, {}}) == 8);
    }
    SUBCASE("degree-1 covers are unique for every base genus") {
        for (int g = 0; g <= 3; ++g) {
            CHECK(hurwitz_count({1, g, {}}) == 1);
            CHECK(hurwitz_brute({1, g, {}}) == 1);
        }
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(hurwitz_count({2, 0, {Partition({3})}}),
                        ArgumentError);
        CHECK_THROWS_AS(hurwitz_brute({2, 0, {Partition({1})}}),
                        ArgumentError);
        CHECK_THROWS_AS(hurwitz_count({11, 1, {}}), ResourceError);
        CHECK_THROWS_AS(hurwitz_brute({6, 1, {}}), ResourceError);
        CHECK_THROWS_AS(hurwitz_brute({5, 2, {}}), ResourceError);
        CHECK_THROWS_AS(hurwitz_count({0, 0, {}}), ArgumentError);
    }
}

TEST_CASE("elliptic_series: Euler product, closed forms, parity") {
    SUBCASE("no insertions: partition generating function") {
        const auto cs = elliptic_series({}, 12);
        REQUIRE(cs.size() == 13);
        for (int d = 0; d <= 12; ++d) {
            CHECK(std::abs(cs[static_cast<std::size_t>(d)].imag()) <= 1e-12);
            CHECK(std::abs(cs[static_cast<std::size_t>(d)].real() -
                           partition_count(d).get_d()) <= 1e-9);
        }
    }
    SUBCASE("one insertion, q^0: the empty-partition eigenvalue") {
        const C z(0.37, 0.21);
        const auto cs = elliptic_series({z}, 2);
        const C expect = 1.0 / (2.0 * std::sinh(z / 2.0));
        CHECK(std::abs(cs[0] - expect) <= 1e-12);
    }
    SUBCASE("one insertion: exact power-sum route at real z") {
        const double z = 0.5;
        const auto cs = elliptic_series({C(z, 0.0)}, 6);
        for (int d = 0; d <= 6; ++d) {
            double expect = partition_count(d).get_d() / z;
            double zk = 1.0, kfact = 1.0;
            for (int k = 1; k <= 24; ++k) {
                zk *= z;
                kfact *= k;
                mpq_class pk = 0;
                for (const Partition& lam : enumerate_partitions(d))
                    pk += power_sum(k, lam);
                expect += pk.get_d() * zk / kfact;
            }
            CHECK(std::abs(cs[static_cast<std::size_t>(d)] - expect) <= 1e-9);
        }
    }
    SUBCASE("transpose parity: coefficients odd under z -> -z") {
        // E(-z; lambda) = -E(z; lambda^T), and each degree is closed under
        // transposition, so every q-coefficient flips sign with z.
        const C z(0.4, 0.3);
        const auto plus = elliptic_series({z}, 8);
        const auto minus = elliptic_series({-z}, 8);
        for (std::size_t d = 0; d < plus.size(); ++d)
            CHECK(std::abs(plus[d] + minus[d]) <= 1e-10);
    }
    SUBCASE("two insertions at the vacuum order") {
        const C z(0.6, 0.1);
        const auto cs = elliptic_series({z, -z}, 1);
        const C s = 2.0 * std::sinh(z / 2.0);
        CHECK(std::abs(cs[0] - (-1.0 / (s * s))) <= 1e-12);
    }
    SUBCASE("domain errors") {
        CHECK_THROWS_AS(elliptic_series({}, 41), ResourceError);
        CHECK_THROWS_AS(elliptic_series({}, -1), ArgumentError);
    }
}
