#include "ranpart/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "ranpart/errors.hpp"
#include "ranpart/fock.hpp"

namespace ranpart {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------- Bessel ---

// J at any integer order via the parity rule J_{-n} = (-1)^n J_n.
double bessel_at(const std::vector<double>& row, long order) {
    const long n = std::labs(order);
    if (n >= static_cast<long>(row.size())) return 0.0;
    const double v = row[static_cast<size_t>(n)];
    return (order < 0 && (n % 2 != 0)) ? -v : v;
}

// sum_{m >= j0} J_m(s)^2 for j0 >= 0 (terms decay superexponentially once
// m exceeds s).
double bessel_square_tail(const std::vector<double>& row, long j0) {
    double acc = 0.0;
    for (long m = static_cast<long>(row.size()) - 1; m >= j0; --m)
        acc += row[static_cast<size_t>(m)] * row[static_cast<size_t>(m)];
    return acc;
}

int bessel_row_length(double s, long max_order) {
    // Orders comfortably past both the turning point (~s) and the largest
    // order requested; entries beyond contribute < 1e-18 to every sum here.
    return static_cast<int>(std::max<long>(max_order, 0) + 60 +
                            static_cast<long>(2.0 * s));
}

double bessel_kernel(double xi, Half x, Half y) {
    if (xi < 0.0) throw ArgumentError("Bessel kernel: xi must be >= 0");
    const double s = 2.0 * std::sqrt(xi);
    const long ox = x.index() + 1, oy = y.index() + 1; // orders x+1/2, y+1/2
    const long max_abs = std::max(std::labs(ox) + 1, std::labs(oy) + 1);
    if (max_abs > 1'000'000)
        throw ArgumentError("Bessel kernel: order out of the supported range");
    const auto row = bessel_j_row(s, bessel_row_length(s, max_abs));
    if (x == y) {
        // Diagonal by the absolutely convergent product series
        // K(x,x) = sum_{r>=0} J_{x+1/2+r}^2, folded onto nonnegative orders
        // through J_{-n}^2 = J_n^2 and sum_{n in Z} J_n^2 = 1.
        return ox >= 0 ? bessel_square_tail(row, ox)
                       : 1.0 - bessel_square_tail(row, 1 - ox);
    }
    const long dx = x - y;
    return std::sqrt(xi) *
           (bessel_at(row, ox - 1) * bessel_at(row, oy) -
            bessel_at(row, ox) * bessel_at(row, oy - 1)) /
           static_cast<double>(dx);
}

// --------------------------------------------------------------- contour ---

std::complex<double> laurent_T(const SchurContourSpec& sp,
                               std::complex<double> z) {
    std::complex<double> acc = 0.0;
    std::complex<double> zp = 1.0;
    for (size_t k = 0; k < sp.t.size(); ++k) {
        zp *= z;
        acc += sp.t[k] * zp;
    }
    std::complex<double> zm = 1.0;
    for (size_t k = 0; k < sp.tbar.size(); ++k) {
        zm /= z;
        acc -= sp.tbar[k] * zm;
    }
    return acc;
}

std::complex<double> contour_pass(const SchurContourSpec& sp, long mx, long my,
                                  int n) {
    // K = (1/n^2) sum_{a,b} A_a B_b / (z_a - w_b) with
    // A_a = e^{T(z_a)} z_a^{-mx}, B_b = e^{-T(w_b)} w_b^{my+1}.
    std::vector<std::complex<double>> zs(static_cast<size_t>(n)),
        ws(static_cast<size_t>(n)), as(static_cast<size_t>(n)),
        bs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double th = 2.0 * kPi * i / n;
        const std::complex<double> dir(std::cos(th), std::sin(th));
        zs[static_cast<size_t>(i)] = sp.r_z * dir;
        ws[static_cast<size_t>(i)] = sp.r_w * dir;
    }
    for (int i = 0; i < n; ++i) {
        const auto z = zs[static_cast<size_t>(i)];
        const auto w = ws[static_cast<size_t>(i)];
        as[static_cast<size_t>(i)] =
            std::exp(laurent_T(sp, z) - static_cast<double>(mx) * std::log(z));
        bs[static_cast<size_t>(i)] =
            std::exp(-laurent_T(sp, w) +
                     static_cast<double>(my + 1) * std::log(w));
    }
    std::complex<double> acc = 0.0;
    for (int a = 0; a < n; ++a) {
        std::complex<double> inner = 0.0;
        for (int b = 0; b < n; ++b)
            inner += bs[static_cast<size_t>(b)] /
                     (zs[static_cast<size_t>(a)] - ws[static_cast<size_t>(b)]);
        acc += as[static_cast<size_t>(a)] * inner;
    }
    return acc / (static_cast<double>(n) * static_cast<double>(n));
}

std::complex<double> contour_kernel(const SchurContourSpec& sp, Half x, Half y) {
    if (!(sp.r_z > sp.r_w) || !(sp.r_w > 0.0))
        throw ArgumentError("SchurContour: need r_z > r_w > 0");
    // Per node the dz dw measure contributes z_a w_b, so the z-sum carries
    // z^{1 - (x+1/2)} = z^{-index(x)} and the w-sum w^{1 + index(y)}.
    const long mx = x.index();
    const long my = y.index();
    int n = std::max(8, sp.initial_nodes);
    std::complex<double> prev = contour_pass(sp, mx, my, n);
    for (n *= 2; n <= 1 << 15; n *= 2) {
        const std::complex<double> cur = contour_pass(sp, mx, my, n);
        if (std::abs(cur - prev) < 1e-12 * std::max(1.0, std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw NumericError("SchurContour quadrature did not settle at x=" +
                       x.str() + ", y=" + y.str() + " (node cap 32768)");
}

// -------------------------------------------------------- sine/multiband ---

double sine_kernel(double a, Half x, Half y) {
    if (!(a >= 0.0) || !(a <= kPi))
        throw ArgumentError("Sine kernel: a must lie in [0, pi]");
    if (x == y) return a / kPi;
    const double d = static_cast<double>(x - y);
    return std::sin(a * d) / (kPi * d);
}

std::complex<double> multiband_kernel(const MultiBandSpec& sp, Half x, Half y) {
    std::vector<Band> bands = sp.bands;
    std::sort(bands.begin(), bands.end(),
              [](const Band& u, const Band& v) { return u.alpha < v.alpha; });
    for (const auto& b : bands)
        if (!(b.alpha >= 0.0) || !(b.beta >= b.alpha) || !(b.beta <= 2.0 * kPi))
            throw ArgumentError("MultiBand: bands must satisfy "
                                "0 <= alpha <= beta <= 2*pi");
    for (size_t i = 1; i < bands.size(); ++i)
        if (bands[i].alpha < bands[i - 1].beta)
            throw ArgumentError("MultiBand: bands must be disjoint");
    const long d = x - y;
    if (d == 0) {
        double total = 0.0;
        for (const auto& b : bands) total += b.beta - b.alpha;
        return total / (2.0 * kPi);
    }
    const std::complex<double> i_unit(0.0, 1.0);
    std::complex<double> acc = 0.0;
    for (const auto& b : bands)
        acc += (std::exp(-i_unit * (b.alpha * static_cast<double>(d))) -
                std::exp(-i_unit * (b.beta * static_cast<double>(d)))) /
               (2.0 * kPi * i_unit * static_cast<double>(d));
    return acc;
}

void require_distinct(std::vector<Half>& xs, const char* who) {
    std::sort(xs.begin(), xs.end());
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
        throw ArgumentError(std::string(who) + ": points must be distinct");
}

bool occupied(const Partition& lam, std::int64_t k) {
    // k is the integer index of the position k + 1/2 in the particle map
    // {lambda_i - i + 1/2}.
    if (k >= 0) {
        for (int i = 1; i <= lam.num_parts(); ++i)
            if (lam.part(i - 1) - i == k) return true;
        return false;
    }
    // Below zero: occupied unless some row vacates the slot; rows beyond the
    // diagram occupy -i + 1/2 for every i > num_parts().
    const long i = -k;
    if (i > lam.num_parts()) return true;
    for (int r = 1; r <= lam.num_parts(); ++r)
        if (lam.part(r - 1) - r == k) return true;
    return false;
}

} // namespace

std::vector<double> bessel_j_row(double s, int nmax) {
    if (s < 0.0) throw ArgumentError("bessel_j_row: argument must be >= 0");
    if (nmax < 0) throw ArgumentError("bessel_j_row: nmax must be >= 0");
    std::vector<double> row(static_cast<size_t>(nmax) + 1, 0.0);
    if (s == 0.0) {
        row[0] = 1.0;
        return row;
    }
    // Miller: run the three-term recurrence downward from well past both nmax
    // and the turning point, then normalize with J_0 + 2 sum J_{2k} = 1.
    const int start = nmax + 40 +
                      static_cast<int>(1.5 * s + 15.0 * std::cbrt(s + 1.0));
    double above = 0.0, here = 1e-300;
    double norm = 0.0;
    for (int n = start; n >= 0; --n) {
        if (n <= nmax) row[static_cast<size_t>(n)] = here;
        if (n % 2 == 0) norm += (n == 0 ? 1.0 : 2.0) * here;
        if (n == 0) break;
        double below = (2.0 * n / s) * here - above;
        above = here;
        here = below;
        if (std::abs(here) > 1e280) { // rescale to dodge overflow
            const double f = 1e-280;
            here *= f;
            above *= f;
            norm *= f;
            for (auto& v : row) v *= f;
        }
    }
    for (auto& v : row) v /= norm;
    return row;
}

std::complex<double> kernel_eval_c(const KernelSpec& spec, Half x, Half y) {
    if (!x.odd_ok() || !y.odd_ok())
        throw ArgumentError("kernel arguments must be half-integers");
    return std::visit(
        [&](const auto& sp) -> std::complex<double> {
            using T = std::decay_t<decltype(sp)>;
            if constexpr (std::is_same_v<T, SchurContourSpec>)
                return contour_kernel(sp, x, y);
            else if constexpr (std::is_same_v<T, BesselSpec>)
                return bessel_kernel(sp.xi, x, y);
            else if constexpr (std::is_same_v<T, SineSpec>)
                return sine_kernel(sp.a, x, y);
            else
                return multiband_kernel(sp, x, y);
        },
        spec);
}

double kernel_eval(const KernelSpec& spec, Half x, Half y) {
    const std::complex<double> v = kernel_eval_c(spec, x, y);
    if (!std::holds_alternative<MultiBandSpec>(spec) &&
        std::abs(v.imag()) > 1e-8 * std::max(1.0, std::abs(v.real())))
        throw NumericError("kernel evaluation has a spurious imaginary part");
    return v.real();
}

double correlation(const KernelSpec& spec, std::vector<Half> xs) {
    if (xs.size() > 12)
        throw ArgumentError("correlation: |X| <= 12 (direct determinant)");
    require_distinct(xs, "correlation");
    const int m = static_cast<int>(xs.size());
    Eigen::MatrixXcd k(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            k(i, j) = kernel_eval_c(spec, xs[static_cast<size_t>(i)],
                                    xs[static_cast<size_t>(j)]);
    const std::complex<double> det =
        m == 0 ? std::complex<double>(1.0) : k.determinant();
    if (std::abs(det.imag()) > 1e-8)
        throw InvariantError("correlation determinant is not real");
    double v = det.real();
    if (v < -1e-10 || v > 1.0 + 1e-10)
        throw InvariantError("correlation outside [0,1]: " + std::to_string(v));
    return std::clamp(v, 0.0, 1.0);
}

BruteResult brute_force_correlation(const MeasureSpec& spec,
                                    const std::vector<Half>& xs, int e_max) {
    if (e_max < 0 || e_max > 60)
        throw ArgumentError("brute_force_correlation: e_max in [0, 60]");
    const bool pp = std::holds_alternative<PoissonizedPlancherelSpec>(spec);
    if (const auto* sc = std::get_if<SchurSpec>(&spec)) {
        if (sc->t != sc->tbar)
            throw ArgumentError("brute_force_correlation: Schur data must "
                                "have tbar == t for positivity");
    } else if (!pp) {
        throw ArgumentError("brute_force_correlation: only positive "
                            "normalized families are supported");
    }
    std::vector<Half> q = xs;
    require_distinct(q, "brute_force_correlation");

    // One pass over all |lambda| <= e_max; for Schur data a single expansion
    // of exp(sum t_k alpha_{-k}) yields every s_lambda(t) at once.
    std::map<Partition, double> prob;
    if (const auto* sc = std::get_if<SchurSpec>(&spec)) {
        OperatorWord word;
        for (size_t k = 0; k < sc->t.size(); ++k)
            if (sc->t[k] != 0.0)
                word.push_back(ScalarExpAlpha{sc->t[k], static_cast<int>(k) + 1});
        const FockC v = apply_word(word, vacuum<std::complex<double>>(e_max));
        double logz = 0.0;
        for (size_t k = 0; k < sc->t.size(); ++k)
            logz += (k + 1.0) * sc->t[k] * sc->t[k];
        const double inv_z = std::exp(-logz);
        for (const auto& [lam, c] : v.coeffs)
            prob[lam] = c.real() * c.real() * inv_z;
    } else {
        for (int n = 0; n <= e_max; ++n)
            for (const auto& lam : enumerate_partitions(n))
                prob[lam] = weight(spec, lam);
    }

    double hit = 0.0, covered = 0.0;
    for (const auto& [lam, p] : prob) {
        covered += p;
        bool all = true;
        for (const auto& x : q)
            if (!occupied(lam, x.index())) {
                all = false;
                break;
            }
        if (all) hit += p;
    }
    return {hit, std::max(0.0, 1.0 - covered)};
}

double gap_probability(const KernelSpec& spec, std::vector<Half> bs) {
    if (bs.size() > 400) throw ArgumentError("gap_probability: |B| <= 400");
    require_distinct(bs, "gap_probability");
    const int m = static_cast<int>(bs.size());
    if (m == 0) return 1.0;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            k(i, j) -= kernel_eval_c(spec, bs[static_cast<size_t>(i)],
                                     bs[static_cast<size_t>(j)]);
    const std::complex<double> det = k.determinant();
    if (std::abs(det.imag()) > 1e-8)
        throw InvariantError("gap determinant is not real");
    double v = det.real();
    if (v < -1e-10 || v > 1.0 + 1e-10)
        throw InvariantError("gap probability outside [0,1]: " +
                             std::to_string(v));
    return std::clamp(v, 0.0, 1.0);
}

double lambda1_cdf_bessel(double xi, int h) {
    if (h < 0) return 0.0; // lambda_1 is nonnegative
    const KernelSpec spec = BesselSpec{xi};
    std::vector<Half> bs;
    bool settled = false;
    for (int j = h; j < h + 1200; ++j) {
        const Half x = Half::from_index(j);
        bs.push_back(x);
        if (kernel_eval(spec, x, x) < 1e-16) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw NumericError("lambda1_cdf_bessel: diagonal cutoff not reached");
    if (bs.size() > 400)
        throw ResourceError("lambda1_cdf_bessel: truncation set exceeds 400");
    return gap_probability(spec, bs);
}

} // namespace ranpart
