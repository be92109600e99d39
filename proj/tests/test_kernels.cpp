#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ranpart/kernels.hpp"

using namespace ranpart;

namespace {

Half h(std::int64_t twice) { return Half{twice}; }

constexpr double kPi = 3.141592653589793238462643383279502884;

// Truncated direct Prob{lambda_1 <= hh} under poissonized Plancherel.
double lambda1_cdf_brute(double xi, int hh, int e_max) {
    const MeasureSpec pp = PoissonizedPlancherelSpec{xi};
    double acc = 0.0;
    for (int n = 0; n <= e_max; ++n)
        for (const auto& lam : enumerate_partitions(n))
            if (lam.part(0) <= hh) acc += weight(pp, lam);
    return acc;
}

} // namespace

TEST_CASE("Miller recurrence against the standard library") {
    for (const double s : {0.3, 2.0, 10.0, 37.7}) {
        const auto row = bessel_j_row(s, 60);
        for (int n = 0; n <= 60; ++n) {
            const double ref = std::cyl_bessel_j(static_cast<double>(n), s);
            CHECK(std::abs(row[static_cast<size_t>(n)] - ref) <
                  1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
    const auto zero = bessel_j_row(0.0, 5);
    CHECK(zero[0] == 1.0);
    CHECK(zero[3] == 0.0);
    CHECK_THROWS_AS(bessel_j_row(-1.0, 3), ArgumentError);
}

TEST_CASE("sine kernel") {
    const KernelSpec sp = SineSpec{0.8};
    CHECK(kernel_eval(sp, h(1), h(1)) == doctest::Approx(0.8 / kPi));
    CHECK(kernel_eval(sp, h(5), h(-1)) ==
          doctest::Approx(std::sin(0.8 * 3) / (kPi * 3)));
    CHECK(kernel_eval(sp, h(5), h(-1)) == kernel_eval(sp, h(-1), h(5)));
    CHECK_THROWS_AS(kernel_eval(KernelSpec(SineSpec{-0.1}), h(1), h(1)),
                    ArgumentError);
    CHECK_THROWS_AS(kernel_eval(KernelSpec(SineSpec{3.5}), h(1), h(1)),
                    ArgumentError);
}

TEST_CASE("multiband kernel") {
    // A symmetric band pair reproduces the sine kernel for integer offsets.
    const double a = 1.1;
    const KernelSpec mb = MultiBandSpec{
        {Band{0.0, a}, Band{2.0 * kPi - a, 2.0 * kPi - 1e-13}}};
    const KernelSpec sine = SineSpec{a};
    for (int dx = -6; dx <= 6; ++dx)
        CHECK(kernel_eval(mb, h(1 + 2 * dx), h(1)) ==
              doctest::Approx(kernel_eval(sine, h(1 + 2 * dx), h(1)))
                  .epsilon(1e-9));

    const KernelSpec one = MultiBandSpec{{Band{0.5, 1.7}}};
    CHECK(kernel_eval(one, h(3), h(3)) == doctest::Approx(1.2 / (2 * kPi)));
    // Hermitian, not symmetric: complex entries conjugate under swap.
    const auto k12 = kernel_eval_c(one, h(1), h(3));
    const auto k21 = kernel_eval_c(one, h(3), h(1));
    CHECK(std::abs(k12 - std::conj(k21)) < 1e-14);

    CHECK_THROWS_AS(
        kernel_eval(KernelSpec(MultiBandSpec{{Band{0.0, 1.0}, Band{0.5, 2.0}}}),
                    h(1), h(1)),
        ArgumentError);
    CHECK_THROWS_AS(
        kernel_eval(KernelSpec(MultiBandSpec{{Band{1.0, 7.0}}}), h(1), h(1)),
        ArgumentError);
}

TEST_CASE("discrete Bessel kernel") {
    // xi -> 0+: the vacuum sea, K(x,y) -> delta_xy [x < 0].
    const KernelSpec tiny = BesselSpec{1e-12};
    for (int tx = -7; tx <= 7; tx += 2)
        for (int ty = -7; ty <= 7; ty += 2) {
            const double v = kernel_eval(tiny, h(tx), h(ty));
            const double expect = (tx == ty && tx < 0) ? 1.0 : 0.0;
            CHECK(std::abs(v - expect) < 1e-5);
        }

    // Symmetry and the product-series identity off the diagonal.
    for (const double xi : {0.25, 1.0, 4.0}) {
        const KernelSpec sp = BesselSpec{xi};
        const double s = 2.0 * std::sqrt(xi);
        const auto row = bessel_j_row(s, 260);
        auto at = [&](long n) {
            const long m = std::labs(n);
            const double v = m < 260 ? row[static_cast<size_t>(m)] : 0.0;
            return (n < 0 && m % 2 != 0) ? -v : v;
        };
        for (int tx = -15; tx <= 15; tx += 2)
            for (int ty = -15; ty <= 15; ty += 2) {
                const double k1 = kernel_eval(sp, h(tx), h(ty));
                CHECK(std::abs(k1 - kernel_eval(sp, h(ty), h(tx))) < 1e-12);
                double series = 0.0;
                for (int r = 180; r >= 0; --r)
                    series += at((tx + 1) / 2 + r) * at((ty + 1) / 2 + r);
                CHECK(std::abs(k1 - series) < 1e-12);
            }
    }
}

TEST_CASE("contour kernel matches the Bessel closed form") {
    for (const double xi : {0.25, 1.0, 4.0}) {
        const double root = std::sqrt(xi);
        const KernelSpec contour = SchurContourSpec{{root}, {root}, 1.6, 0.625, 64};
        const KernelSpec bessel = BesselSpec{xi};
        for (int tx = -15; tx <= 15; tx += 2)
            for (int ty = tx; ty <= 15; ty += 2)
                CHECK(std::abs(kernel_eval(contour, h(tx), h(ty)) -
                               kernel_eval(bessel, h(tx), h(ty))) < 1e-10);
    }
    CHECK_THROWS_AS(
        kernel_eval(KernelSpec(SchurContourSpec{{1.0}, {1.0}, 0.5, 0.9, 64}),
                    h(1), h(1)),
        ArgumentError);
}

TEST_CASE("determinantal correlations") {
    const KernelSpec sp = BesselSpec{1.0};
    CHECK(correlation(sp, {}) == 1.0);
    const double k11 = kernel_eval(sp, h(1), h(1));
    CHECK(correlation(sp, {h(1)}) == doctest::Approx(k11).epsilon(1e-13));

    // Two-point against the truncated direct sum.
    const auto brute = brute_force_correlation(
        MeasureSpec(PoissonizedPlancherelSpec{1.0}), {h(1), h(3)}, 40);
    CHECK(brute.tail_bound < 1e-12);
    CHECK(std::abs(correlation(sp, {h(1), h(3)}) - brute.value) < 1e-8);

    CHECK_THROWS_AS(correlation(sp, {h(1), h(1)}), ArgumentError);
    CHECK_THROWS_AS(correlation(sp, std::vector<Half>(13, h(1))), ArgumentError);
}

TEST_CASE("Schur-measure correlations end-to-end") {
    // Contour kernel vs direct enumeration for t = tbar = (0.3, 0.1),
    // every X with |X| <= 2 drawn from {-7/2, ..., 7/2}.
    const std::vector<double> t = {0.3, 0.1};
    const KernelSpec sp = SchurContourSpec{t, t, 1.6, 0.625, 64};
    const MeasureSpec ms = SchurSpec{t, t};
    std::vector<Half> pts;
    for (int tw = -7; tw <= 7; tw += 2) pts.push_back(h(tw));
    for (size_t i = 0; i < pts.size(); ++i) {
        const auto b1 = brute_force_correlation(ms, {pts[i]}, 26);
        CHECK(std::abs(correlation(sp, {pts[i]}) - b1.value) <=
              b1.tail_bound + 1e-8);
        for (size_t j = i + 1; j < pts.size(); ++j) {
            const auto b2 = brute_force_correlation(ms, {pts[i], pts[j]}, 26);
            CHECK(std::abs(correlation(sp, {pts[i], pts[j]}) - b2.value) <=
                  b2.tail_bound + 1e-8);
        }
    }
    CHECK_THROWS_AS(
        brute_force_correlation(MeasureSpec(SchurSpec{{0.3}, {0.2}}), {h(1)}, 10),
        ArgumentError);
    CHECK_THROWS_AS(
        brute_force_correlation(MeasureSpec(PlancherelSpec{3}), {h(1)}, 10),
        ArgumentError);
}

TEST_CASE("brute force: anchors and monotonicity") {
    // xi -> 0: the sea below zero is full.
    const auto sea = brute_force_correlation(
        MeasureSpec(PoissonizedPlancherelSpec{1e-9}), {h(-1)}, 12);
    CHECK(sea.value == doctest::Approx(1.0).epsilon(1e-7));

    const auto one = brute_force_correlation(
        MeasureSpec(PoissonizedPlancherelSpec{1.0}), {h(1)}, 40);
    CHECK(std::abs(one.value - kernel_eval(KernelSpec(BesselSpec{1.0}), h(1), h(1))) <=
          one.tail_bound + 1e-10);

    // Adding a requirement can only shrink the event.
    const MeasureSpec pp = PoissonizedPlancherelSpec{1.5};
    const auto a = brute_force_correlation(pp, {h(1)}, 24);
    const auto ab = brute_force_correlation(pp, {h(1), h(-3)}, 24);
    const auto abc = brute_force_correlation(pp, {h(1), h(-3), h(5)}, 24);
    CHECK(ab.value <= a.value + 1e-15);
    CHECK(abc.value <= ab.value + 1e-15);
}

TEST_CASE("gap probabilities and the lambda_1 law") {
    const KernelSpec sp = BesselSpec{1.0};
    CHECK(gap_probability(sp, {}) == 1.0);
    CHECK(gap_probability(sp, {h(3)}) ==
          doctest::Approx(1.0 - kernel_eval(sp, h(3), h(3))).epsilon(1e-12));

    // Inclusion-exclusion over subsets reproduces the complement determinant.
    const std::vector<Half> b3 = {h(-3), h(1), h(5)};
    double incl = 0.0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<Half> sub;
        for (int i = 0; i < 3; ++i)
            if (mask & (1 << i)) sub.push_back(b3[static_cast<size_t>(i)]);
        const int sign = (static_cast<int>(sub.size()) % 2 == 0) ? 1 : -1;
        incl += sign * correlation(sp, sub);
    }
    CHECK(std::abs(gap_probability(sp, b3) - incl) < 1e-10);

    // lambda_1 CDF against the direct truncated sum, h = 0..3.
    for (int hh = 0; hh <= 3; ++hh)
        CHECK(std::abs(lambda1_cdf_bessel(1.0, hh) -
                       lambda1_cdf_brute(1.0, hh, 40)) < 1e-8);
    CHECK(lambda1_cdf_bessel(1.0, -1) == 0.0);
}

TEST_CASE("particle-hole balance of the Bessel diagonal") {
    const KernelSpec sp = BesselSpec{1.0};
    double holes = 0.0, particles = 0.0;
    for (int j = 1; j <= 80; ++j) {
        holes += 1.0 - kernel_eval(sp, h(-2 * j + 1), h(-2 * j + 1));
        particles += kernel_eval(sp, h(2 * j - 1), h(2 * j - 1));
    }
    CHECK(std::isfinite(holes));
    CHECK(std::abs(holes - particles) < 1e-8);
}
