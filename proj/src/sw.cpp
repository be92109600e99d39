#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "ranpart/errors.hpp"
#include "ranpart/shapes.hpp"

namespace ranpart {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

// The universal constant relating gap periods of z dPhi to the potential
// differences.  Calibrated once against the direct action maximizer on
// reference two-band potentials (two distinct kappa values agree to four
// digits); the cross-solver agreement test keeps it honest.
constexpr double kPeriodConstant = kPi / 2.0;

} // namespace

double SWCurveData::eval(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

std::complex<double> SWCurveData::eval(std::complex<double> z) const {
    std::complex<double> acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
}

double SWCurveData::derivative(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;)
        acc = acc * x + coeffs[k] * static_cast<double>(k);
    return acc;
}

SWCurveData chebyshev_curve(int n) {
    if (n < 1) throw ArgumentError("chebyshev_curve: degree must be >= 1");
    // P_0 = 2, P_1 = z, P_{j+1} = z P_j - P_{j-1}; P_n = 2 T_n(z/2).
    std::vector<double> prev{2.0}, cur{0.0, 1.0};
    if (n == 0) return SWCurveData{prev};
    for (int j = 1; j < n; ++j) {
        std::vector<double> next(j + 2, 0.0);
        for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += cur[k];
        for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return SWCurveData{cur};
}

void validate_curve(const SWCurveData& curve) {
    const int n = curve.degree();
    if (n < 1) throw ArgumentError("curve: degree must be >= 1");
    for (double c : curve.coeffs)
        if (!std::isfinite(c))
            throw ArgumentError("curve: coefficients must be finite");
    if (curve.coeffs[static_cast<std::size_t>(n)] != 1.0)
        throw ArgumentError("curve: polynomial must be monic");
    if (n >= 1 && curve.coeffs[static_cast<std::size_t>(n) - 1] != 0.0)
        throw ArgumentError("curve: the z^{N-1} coefficient must vanish");
}

namespace {

// Real roots of a monic polynomial via the companion matrix.
std::vector<double> real_roots(std::vector<double> coeffs) {
    const std::size_t n = coeffs.size() - 1;
    if (n == 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<long>(n),
                                                 static_cast<long>(n));
    for (std::size_t i = 0; i + 1 < n; ++i)
        comp(static_cast<long>(i) + 1, static_cast<long>(i)) = 1.0;
    for (std::size_t i = 0; i < n; ++i)
        comp(static_cast<long>(i), static_cast<long>(n) - 1) = -coeffs[i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp);
    std::vector<double> roots;
    for (long i = 0; i < solver.eigenvalues().size(); ++i) {
        const std::complex<double> ev = solver.eigenvalues()(i);
        // double roots (band tangencies) surface as conjugate pairs with a
        // square-root-of-epsilon imaginary part, so the cutoff is generous
        if (std::abs(ev.imag()) <= 2e-7 * (1.0 + std::abs(ev.real())))
            roots.push_back(ev.real());
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

struct BandStructure {
    // bands sorted left to right; touches[i] holds the interior points of
    // band i where |B| grazes 2 (double branch points)
    std::vector<std::pair<double, double>> bands;
    std::vector<std::vector<double>> touches;
};

BandStructure curve_bands(const SWCurveData& curve) {
    validate_curve(curve);
    const int n = curve.degree();

    std::vector<double> pts;
    for (double shift : {-2.0, 2.0}) {
        std::vector<double> c = curve.coeffs;
        c[0] -= shift;
        for (double r : real_roots(c)) pts.push_back(r);
    }
    std::sort(pts.begin(), pts.end());
    // cluster numerically coincident branch points
    std::vector<double> edges;
    for (double p : pts) {
        if (!edges.empty() && std::abs(p - edges.back()) <=
                                  5e-7 * (1.0 + std::abs(p)))
            edges.back() = 0.5 * (edges.back() + p);
        else
            edges.push_back(p);
    }
    if (edges.empty())
        throw ArgumentError("curve: no real branch points, no bands exist");

    // midpoint classification of the segments between consecutive edges
    BandStructure bs;
    std::vector<char> inside(edges.size() > 1 ? edges.size() - 1 : 0);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        inside[i] = std::abs(curve.eval(0.5 * (edges[i] + edges[i + 1]))) <= 2.0;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        if (!inside[i]) continue;
        std::size_t j = i;
        std::vector<double> touch;
        while (j + 1 < inside.size() && inside[j + 1]) {
            touch.push_back(edges[j + 1]);
            ++j;
        }
        bs.bands.emplace_back(edges[i], edges[j + 1]);
        bs.touches.push_back(std::move(touch));
        i = j;
    }
    if (bs.bands.empty())
        throw ArgumentError("curve: |B| <= 2 nowhere on the real line");

    // Every branch point must be either a simple band edge or an interior
    // double point, so the phase advances monotonically through each band
    // and accumulates to N pi overall.  A curve with an interior extremum
    // strictly inside (-2, 2) fails the two-sided normalization Re Phi ->
    // +-1 (the phase backtracks) and is rejected as inadmissible.
    std::size_t total_touch = 0;
    for (const auto& t : bs.touches) total_touch += t.size();
    if (bs.bands.size() + total_touch != static_cast<std::size_t>(n))
        throw ArgumentError(
            "curve: inadmissible band structure (an extremum of B lies "
            "strictly inside (-2, 2), so the band phase is not monotone)");
    return bs;
}

// Accumulated phase of the in-disk branch at x + i0, walking from +infinity:
// pi per full band span plus a lifted arccos inside a band.
double phase_theta(const SWCurveData& curve, const BandStructure& bs,
                   double x) {
    const std::size_t kbands = bs.bands.size();
    double base = 0.0;
    for (std::size_t i = kbands; i-- > 0;) {
        const auto& [lo, hi] = bs.bands[i];
        if (x > hi) return base; // in the gap right of band i
        if (x >= lo) {
            std::size_t cnt = 0;
            for (double tpt : bs.touches[i])
                if (tpt > x) ++cnt;
            const double span_count = base / kPi + static_cast<double>(cnt);
            const double ratio =
                std::clamp(0.5 * curve.eval(x), -1.0, 1.0);
            const double local = std::acos(ratio);
            const bool even =
                (static_cast<long>(std::llround(span_count)) % 2) == 0;
            return base + static_cast<double>(cnt) * kPi +
                   (even ? local : kPi - local);
        }
        base += kPi * (1.0 + static_cast<double>(bs.touches[i].size()));
    }
    return base; // left of every band
}

SWMapValue boundary_map(const SWCurveData& curve, const BandStructure& bs,
                        double x) {
    const double n = static_cast<double>(curve.degree());
    const double theta = phase_theta(curve, bs, x);
    const double babs = std::abs(curve.eval(x));
    const double radial = babs <= 2.0 ? 0.0 : std::acosh(0.5 * babs);
    SWMapValue out;
    out.w = std::exp(std::complex<double>(radial, theta));
    // Phi = 1 + (2 / (pi i N)) log(1/w): the in-disk logarithm keeps
    // Re Phi inside [-1, 1] and Re Phi -> +1 to the far right.
    out.phi = std::complex<double>(1.0 - (2.0 / (kPi * n)) * theta,
                                   (2.0 / (kPi * n)) * radial);
    return out;
}

std::complex<double> large_root(std::complex<double> b) {
    const std::complex<double> r = std::sqrt(b * b - 4.0);
    const std::complex<double> w1 = 0.5 * (b + r);
    const std::complex<double> w2 = 0.5 * (b - r);
    return std::abs(w1) >= std::abs(w2) ? w1 : w2;
}

} // namespace

std::vector<std::pair<double, double>> sw_bands(const SWCurveData& curve) {
    return curve_bands(curve).bands;
}

SWMapValue sw_map(const SWCurveData& curve, std::complex<double> z) {
    const BandStructure bs = curve_bands(curve);
    if (z.imag() < 0.0)
        throw ArgumentError("sw_map: z must lie in the closed upper half-plane");
    if (z.imag() == 0.0) return boundary_map(curve, bs, z.real());

    // Analytic continuation from a real anchor to the right of every band,
    // where the |w| >= 1 branch is real and positive.  The route arcs high
    // through the upper half-plane (up, across, down): skimming the real
    // axis would bring the two reciprocal branches within O(sqrt(Im z)) of
    // each other over the bands and defeat the continuity selection.
    const double n = static_cast<double>(curve.degree());
    const double anchor = bs.bands.back().second + 2.0 + 0.25 * std::abs(z);
    const double height = 2.0 + std::abs(z);
    const std::complex<double> waypoints[4] = {
        {anchor, 0.0}, {anchor, height}, {z.real(), height}, z};
    std::complex<double> prev = large_root(curve.eval(anchor));
    double theta = 0.0; // continuously tracked argument of w
    double log_abs = std::log(std::abs(prev));
    for (int leg = 0; leg < 3; ++leg) {
        const std::complex<double> a = waypoints[leg];
        const std::complex<double> b = waypoints[leg + 1];
        const int steps =
            512 + static_cast<int>(256.0 * std::abs(b - a));
        for (int k = 1; k <= steps; ++k) {
            const std::complex<double> zk =
                a + (b - a) * (static_cast<double>(k) / steps);
            std::complex<double> w = large_root(curve.eval(zk));
            // the two branches are reciprocal; continuity picks the right one
            if (std::abs(w / prev - 1.0) > std::abs(1.0 / (w * prev) - 1.0))
                w = 1.0 / w;
            const std::complex<double> ratio = w / prev;
            if (std::abs(ratio - 1.0) > 0.8)
                throw NumericError(
                    "sw_map: branch tracking lost continuity along the path");
            theta += std::arg(ratio);
            log_abs = std::log(std::abs(w));
            prev = w;
        }
    }
    SWMapValue out;
    out.w = prev;
    out.phi = std::complex<double>(1.0 - (2.0 / (kPi * n)) * theta,
                                   (2.0 / (kPi * n)) * log_abs);
    return out;
}

DiscreteProfile maximizer_from_map(const SWCurveData& curve, std::size_t cells,
                                   double half_width) {
    const BandStructure bs = curve_bands(curve);
    if (cells == 0) throw ArgumentError("maximizer_from_map: empty grid");
    if (!(half_width > 0.0) ||
        half_width < std::max(std::abs(bs.bands.front().first),
                              std::abs(bs.bands.back().second)))
        throw ArgumentError(
            "maximizer_from_map: grid must cover every band of the curve");
    DiscreteProfile f;
    f.lo = -half_width;
    f.hi = half_width;
    f.slopes.resize(cells);
    const double n = static_cast<double>(curve.degree());
    for (std::size_t i = 0; i < cells; ++i)
        f.slopes[i] =
            1.0 - (2.0 / (kPi * n)) * phase_theta(curve, bs, f.mid(i));
    return f;
}

std::vector<double> sw_periods(const SWCurveData& curve) {
    const BandStructure bs = curve_bands(curve);
    const double n = static_cast<double>(curve.degree());
    std::vector<double> periods;
    for (std::size_t k = 0; k + 1 < bs.bands.size(); ++k) {
        const double lo = bs.bands[k].second;
        const double hi = bs.bands[k + 1].first;
        const double mid = 0.5 * (lo + hi);
        const double rad = 0.5 * (hi - lo);
        if (!(rad > 0.0) || std::abs(curve.eval(mid)) <= 2.0)
            throw ArgumentError("sw_periods: bands overlap (degenerate curve)");
        const double sgn = curve.eval(mid) > 0.0 ? 1.0 : -1.0;
        //   p_k = -2/(pi n) sign(B) int_gap x B'(x) / sqrt(B^2 - 4) dx
        // with x = mid + rad sin(theta); the substitution absorbs the
        // square-root vanishing of the integrand denominator at both edges.
        const int nq = 200000;
        double acc = 0.0;
        for (int j = 0; j < nq; ++j) {
            const double th =
                ((static_cast<double>(j) + 0.5) / nq - 0.5) * kPi;
            const double x = mid + rad * std::sin(th);
            const double b = curve.eval(x);
            acc += x * curve.derivative(x) / std::sqrt(b * b - 4.0) * rad *
                   std::cos(th);
        }
        acc *= kPi / nq;
        periods.push_back(-2.0 / (kPi * n) * sgn * acc);
    }
    return periods;
}

namespace {

// Residuals F_k = (pi/2) p_k - kappa (u_k - u_{k+1}) for the curve with the
// given free coefficients; a curve whose gaps have closed (fewer periods
// than targets) reports an out-of-domain marker instead.
bool period_residuals(int n, const std::vector<double>& free_coeffs,
                      const std::vector<double>& targets,
                      std::vector<double>& out) {
    SWCurveData curve;
    curve.coeffs = free_coeffs;
    curve.coeffs.resize(static_cast<std::size_t>(n) + 1, 0.0);
    curve.coeffs[static_cast<std::size_t>(n)] = 1.0;
    curve.coeffs[static_cast<std::size_t>(n) - 1] = 0.0;
    std::vector<double> p;
    try {
        p = sw_periods(curve);
    } catch (const ArgumentError&) {
        return false;
    } catch (const NumericError&) {
        return false;
    }
    if (p.size() != targets.size()) return false;
    out.resize(targets.size());
    for (std::size_t k = 0; k < targets.size(); ++k)
        out[k] = kPeriodConstant * p[k] - targets[k];
    return true;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

} // namespace

MatchResult match_periods(const std::vector<double>& u, double kappa,
                          const std::optional<std::vector<double>>& initial) {
    const int n = static_cast<int>(u.size());
    if (n < 2)
        throw ArgumentError("match_periods: need at least two potential levels");
    for (int k = 0; k + 1 < n; ++k)
        if (!(u[static_cast<std::size_t>(k)] >
              u[static_cast<std::size_t>(k) + 1]))
            throw ArgumentError("match_periods: u must be strictly decreasing");
    if (!(kappa > 0.0))
        throw ArgumentError("match_periods: kappa must be positive");

    std::vector<double> targets(static_cast<std::size_t>(n) - 1);
    for (int k = 0; k + 1 < n; ++k)
        targets[static_cast<std::size_t>(k)] =
            kappa * (u[static_cast<std::size_t>(k)] -
                     u[static_cast<std::size_t>(k) + 1]);

    // Unknowns: coefficients of 1, z, ..., z^{N-2}.  Default starts are
    // dilated closed-gap curves rho^N 2 T_N(z / (2 rho)): every gap of the
    // dilation is open for rho > 1 (the interior extrema reach +-2 rho^N),
    // which keeps the first Newton iterate inside the band domain.
    std::vector<std::vector<double>> starts;
    if (initial) {
        if (initial->size() != static_cast<std::size_t>(n) - 1)
            throw ArgumentError(
                "match_periods: initial guess must supply the N-1 free "
                "coefficients");
        starts.push_back(*initial);
    } else {
        const SWCurveData cheb = chebyshev_curve(n);
        for (double rho : {1.06, 1.15, 1.3, 1.5, 1.8, 2.2, 2.8, 3.5}) {
            std::vector<double> c(static_cast<std::size_t>(n) - 1);
            for (std::size_t k = 0; k + 1 < static_cast<std::size_t>(n); ++k)
                c[k] = cheb.coeffs[k] *
                       std::pow(rho, static_cast<double>(n) -
                                         static_cast<double>(k));
            starts.push_back(std::move(c));
        }
    }

    const double tol = 1e-10 * std::max(1.0, max_abs(targets));
    std::string last_failure = "no admissible starting curve";
    for (const auto& start : starts) {
        std::vector<double> c = start, f, f_try, c_try(c.size());
        if (!period_residuals(n, c, targets, f)) {
            last_failure = "initial curve has a degenerate band structure";
            continue;
        }
        long iters = 0;
        bool stalled = false;
        for (; iters < 120 && max_abs(f) > tol; ++iters) {
            // finite-difference Jacobian, then a damped Newton step
            const std::size_t dim = c.size();
            Eigen::MatrixXd jac(static_cast<long>(dim),
                                static_cast<long>(dim));
            bool jac_ok = true;
            for (std::size_t j = 0; j < dim && jac_ok; ++j) {
                const double eps = 1e-6 * (1.0 + std::abs(c[j]));
                c_try = c;
                c_try[j] += eps;
                double sign = 1.0;
                if (!period_residuals(n, c_try, targets, f_try)) {
                    c_try[j] = c[j] - eps;
                    sign = -1.0;
                    if (!period_residuals(n, c_try, targets, f_try)) {
                        last_failure = "Jacobian probe left the band domain";
                        jac_ok = false;
                        break;
                    }
                }
                for (std::size_t i = 0; i < dim; ++i)
                    jac(static_cast<long>(i), static_cast<long>(j)) =
                        sign * (f_try[i] - f[i]) / eps;
            }
            if (!jac_ok) {
                stalled = true;
                break;
            }
            Eigen::VectorXd rhs(static_cast<long>(dim));
            for (std::size_t i = 0; i < dim; ++i)
                rhs(static_cast<long>(i)) = -f[i];
            const Eigen::VectorXd delta = jac.fullPivLu().solve(rhs);

            double alpha = 1.0;
            bool accepted = false;
            for (int bt = 0; bt < 40; ++bt, alpha *= 0.5) {
                for (std::size_t i = 0; i < dim; ++i)
                    c_try[i] = c[i] + alpha * delta(static_cast<long>(i));
                if (!period_residuals(n, c_try, targets, f_try)) continue;
                if (max_abs(f_try) < max_abs(f) * (1.0 - 1e-4 * alpha) ||
                    max_abs(f_try) < tol) {
                    accepted = true;
                    break;
                }
            }
            if (!accepted) {
                std::ostringstream msg;
                msg << "Newton stalled at residual " << max_abs(f) << " after "
                    << iters << " iterations";
                last_failure = msg.str();
                stalled = true;
                break;
            }
            c = c_try;
            f = f_try;
        }
        if (stalled) continue;
        if (max_abs(f) > tol) {
            std::ostringstream msg;
            msg << "residual " << max_abs(f) << " above tolerance " << tol
                << " after " << iters << " iterations";
            last_failure = msg.str();
            continue;
        }

        MatchResult res;
        res.curve.coeffs = c;
        res.curve.coeffs.resize(static_cast<std::size_t>(n) + 1, 0.0);
        res.curve.coeffs[static_cast<std::size_t>(n)] = 1.0;
        res.curve.coeffs[static_cast<std::size_t>(n) - 1] = 0.0;
        res.residual = max_abs(f);
        res.iterations = iters;
        return res;
    }
    throw NumericError("match_periods: " + last_failure);
}

} // namespace ranpart
