#include "ranpart/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>

#include "ranpart/errors.hpp"

namespace ranpart {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

void require_conjugate(const std::vector<double>& t,
                       const std::vector<double>& tbar) {
    if (t.size() != tbar.size())
        throw ArgumentError("band data: t and tbar must have equal length");
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] != tbar[k])
            throw ArgumentError(
                "band data: tbar must be the conjugate of t "
                "(entrywise equal for real data)");
    if (t.empty())
        throw ArgumentError("band data: at least one coefficient required");
}

double g_value(const std::vector<double>& t, double phi) {
    // sum_k k t_k e^{ik phi} + conj = sum_k 2 k t_k cos(k phi)
    double acc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k)
        acc += 2.0 * static_cast<double>(k + 1) * t[k] *
               std::cos(static_cast<double>(k + 1) * phi);
    return acc;
}

double g_derivative(const std::vector<double>& t, double phi) {
    double acc = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        const double kk = static_cast<double>(k + 1);
        acc -= 2.0 * kk * kk * t[k] * std::sin(kk * phi);
    }
    return acc;
}

// Locate a root of g - level inside [lo, hi] where the sign changes.
double bisect_root(const std::vector<double>& t, double level, double lo,
                   double hi) {
    double flo = g_value(t, lo) - level;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g_value(t, mid) - level;
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double g_of_phi(const std::vector<double>& t, const std::vector<double>& tbar,
                double phi) {
    require_conjugate(t, tbar);
    return g_value(t, phi);
}

double BandGapStructure::density() const {
    double total = 0.0;
    for (const auto& b : bands) total += b.beta - b.alpha;
    return total / (2.0 * kPi);
}

BandGapStructure bands_at_level(const std::vector<double>& t,
                                const std::vector<double>& tbar, double level) {
    require_conjugate(t, tbar);

    BandGapStructure out;
    out.level = level;

    // Degeneracy flag: the level sits (numerically) on a critical value of g.
    // Critical points come from sign changes of g' on a fine scan.
    const std::size_t scan = 20000 * t.size();
    double scale = 1.0;
    {
        // half-step offset: critical points routinely sit at 0 or pi, and a
        // sample landing exactly on one would hide its sign change
        const auto at = [&](std::size_t i) {
            return 2.0 * kPi * (static_cast<double>(i) + 0.5) /
                   static_cast<double>(scan);
        };
        double prev = g_derivative(t, at(0));
        double prev_phi = at(0);
        for (std::size_t i = 1; i <= scan; ++i) {
            const double phi = at(i);
            const double cur = g_derivative(t, phi);
            scale = std::max(scale, std::abs(g_value(t, phi)));
            if ((prev <= 0.0) != (cur <= 0.0)) {
                // bisect g' to find the critical point
                double lo = prev_phi, hi = phi, flo = prev;
                for (int it = 0; it < 100; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = g_derivative(t, mid);
                    if ((flo <= 0.0) == (fm <= 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                const double crit_val = g_value(t, 0.5 * (lo + hi));
                if (std::abs(crit_val - level) <= 1e-12 * scale)
                    out.degenerate_warning = true;
            }
            prev = cur;
            prev_phi = phi;
        }
    }

    // Roots of g = level on [0, 2pi) from a sign-change scan.
    std::vector<double> roots;
    double gmin = g_value(t, 0.0), gmax = gmin;
    double prev = gmin - level;
    double prev_phi = 0.0;
    for (std::size_t i = 1; i <= scan; ++i) {
        const double phi =
            2.0 * kPi * static_cast<double>(i) / static_cast<double>(scan);
        const double gv = g_value(t, phi);
        gmin = std::min(gmin, gv);
        gmax = std::max(gmax, gv);
        const double cur = gv - level;
        if ((prev <= 0.0) != (cur <= 0.0))
            roots.push_back(bisect_root(t, level, prev_phi, phi));
        prev = cur;
        prev_phi = phi;
    }

    if (roots.empty()) {
        // no crossings: the circle is all band or all gap; a level tangent
        // to an extremum of g (flagged degenerate) counts as the closed side
        if (gmin >= level)
            out.bands.push_back(Band{0.0, 2.0 * kPi}); // full circle
        return out;                                    // else empty
    }

    // Walk the cyclic gaps between consecutive roots; a midpoint sign check
    // decides which side of each root belongs to the band set.
    const std::size_t r = roots.size();
    std::vector<Band> arcs;
    for (std::size_t i = 0; i < r; ++i) {
        const double a = roots[i];
        const double b = (i + 1 < r) ? roots[i + 1] : roots[0] + 2.0 * kPi;
        const double mid = 0.5 * (a + b);
        if (g_value(t, std::fmod(mid, 2.0 * kPi)) >= level) {
            if (b <= 2.0 * kPi) {
                arcs.push_back(Band{a, b});
            } else {
                // the arc wraps through phi = 0: split it
                arcs.push_back(Band{a, 2.0 * kPi});
                if (roots[0] > 0.0) arcs.push_back(Band{0.0, roots[0]});
            }
        }
    }
    std::sort(arcs.begin(), arcs.end(),
              [](const Band& u, const Band& v) { return u.alpha < v.alpha; });
    out.bands = arcs;
    return out;
}

double limit_density(const std::vector<double>& t,
                     const std::vector<double>& tbar, double level) {
    return bands_at_level(t, tbar, level).density();
}

double limit_kernel(const std::vector<double>& t,
                    const std::vector<double>& tbar, double level, long dx) {
    const BandGapStructure bg = bands_at_level(t, tbar, level);
    if (bg.bands.empty()) return 0.0;
    const MultiBandSpec spec{bg.bands};
    const std::complex<double> v =
        kernel_eval_c(KernelSpec{spec}, Half::from_index(dx),
                      Half::from_index(0));
    if (std::abs(v.imag()) > 1e-10)
        throw NumericError("limit_kernel: non-real value for symmetric bands");
    return v.real();
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

double vkls_slope(double x) {
    if (x <= -2.0) return -1.0;
    if (x >= 2.0) return 1.0;
    return (2.0 / kPi) * std::asin(0.5 * x);
}

double vkls_height(double x) {
    if (std::abs(x) >= 2.0) return std::abs(x);
    return (2.0 / kPi) * (x * std::asin(0.5 * x) + std::sqrt(4.0 - x * x));
}

double DiscreteProfile::cell_width() const {
    if (slopes.empty()) throw ArgumentError("DiscreteProfile: empty grid");
    if (!(hi > lo)) throw ArgumentError("DiscreteProfile: hi must exceed lo");
    return (hi - lo) / static_cast<double>(slopes.size());
}

double DiscreteProfile::mid(std::size_t i) const {
    return lo + cell_width() * (static_cast<double>(i) + 0.5);
}

double DiscreteProfile::value(double x) const {
    if (x <= lo) return -x; // far field |x| to the left
    const double h = cell_width();
    double acc = -lo; // f(lo) = |lo|
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double a = lo + h * static_cast<double>(i);
        const double b = a + h;
        if (x >= b) {
            acc += slopes[i] * h;
        } else {
            acc += slopes[i] * (x - a);
            return acc;
        }
    }
    return acc + (x - hi); // far field slope +1 to the right
}

DiscreteProfile profile_from_slope(double (*slope)(double), double lo,
                                   double hi, std::size_t cells) {
    DiscreteProfile f;
    f.lo = lo;
    f.hi = hi;
    f.slopes.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) f.slopes[i] = slope(f.mid(i));
    return f;
}

double profile_sup_distance(const DiscreteProfile& f,
                            const DiscreteProfile& g) {
    const double lo = std::min(f.lo, g.lo) - 1.0;
    const double hi = std::max(f.hi, g.hi) + 1.0;
    double sup = 0.0;
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / n;
        sup = std::max(sup, std::abs(f.value(x) - g.value(x)));
    }
    return sup;
}

// ---------------------------------------------------------------------------
// Hook energy: exact quadratic form in the slope variables
// ---------------------------------------------------------------------------

namespace {

// Antiderivatives used by the closed-form cell-pair integrals of log(t - s):
// antiA = int log u du, antiM = int u log u du, both continued by 0 for u <= 0
// (the integrable endpoint of the logarithmic singularity).
double antiA(double u) { return u <= 0.0 ? 0.0 : u * std::log(u) - u; }
double antiM(double u) {
    return u <= 0.0 ? 0.0 : 0.5 * u * u * std::log(u) - 0.25 * u * u;
}

// iint over cell pair at midpoint distance d (width h each) of log(t - s).
double pair_integral(double d, double h) {
    const double lo = d - h, mid = d, hi = d + h;
    return (h - d) * (antiA(mid) - antiA(lo)) + (antiM(mid) - antiM(lo)) +
           (h + d) * (antiA(hi) - antiA(mid)) - (antiM(hi) - antiM(mid));
}

// F[k] = iint_{cell pair at lag k} log(t - s); F[0] is the triangle s < t
// within one cell.
std::vector<double> toeplitz_baseband(std::size_t m, double h) {
    std::vector<double> f(m);
    f[0] = 0.5 * h * h * std::log(h) - 0.75 * h * h;
    for (std::size_t k = 1; k < m; ++k)
        f[k] = pair_integral(static_cast<double>(k) * h, h);
    return f;
}

// E restricted to slope fields on a uniform grid is an exact quadratic form
//   E(s) = c0 + b.s + s.H s / 2,    (Hs)_i = -(Ts)_i/2 - F0 s_i /2
// where T is the symmetric Toeplitz matrix of the cell-pair integrals.  The
// constant and linear parts come from the (1 + f')(1 - f') expansion.
struct EnergyForm {
    std::size_t m = 0;
    double h = 0.0;
    double lo = 0.0;
    std::vector<double> f;      // Toeplitz base band, f[0] = F0
    std::vector<double> b;      // linear term
    double c0 = 0.0;            // constant term

    explicit EnergyForm(const DiscreteProfile& grid) {
        m = grid.cells();
        h = grid.cell_width();
        lo = grid.lo;
        f = toeplitz_baseband(m, h);
        // prefix sums G[r] = f[1] + ... + f[r]
        std::vector<double> g(m, 0.0);
        for (std::size_t r = 1; r < m; ++r) g[r] = g[r - 1] + f[r];
        b.resize(m);
        double sum_g = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            b[i] = 0.5 * (g[m - 1 - i] - g[i]);
            sum_g += g[i];
        }
        c0 = 0.5 * sum_g + 0.5 * f[0] * static_cast<double>(m);
    }

    // y = H s with H = -(T + F0 I)/2, T full symmetric Toeplitz of f.
    void apply_h(const std::vector<double>& s, std::vector<double>& y) const {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                acc += f[i >= j ? i - j : j - i] * s[j];
            y[i] = -0.5 * (acc + f[0] * s[i]);
        }
    }

    double value(const std::vector<double>& s) const {
        std::vector<double> hs(m);
        apply_h(s, hs);
        double acc = c0;
        for (std::size_t i = 0; i < m; ++i)
            acc += b[i] * s[i] + 0.5 * s[i] * hs[i];
        return acc;
    }

    void gradient(const std::vector<double>& s, std::vector<double>& g) const {
        apply_h(s, g);
        for (std::size_t i = 0; i < m; ++i) g[i] += b[i];
    }
};

} // namespace

double hook_energy(const DiscreteProfile& f) {
    if (f.slopes.empty()) throw ArgumentError("hook_energy: empty profile");
    for (double s : f.slopes)
        if (!(s >= -1.0 - 1e-9) || !(s <= 1.0 + 1e-9))
            throw ArgumentError("hook_energy: slopes must lie in [-1, 1]");
    return EnergyForm(f).value(f.slopes);
}

// ---------------------------------------------------------------------------
// Surface tension
// ---------------------------------------------------------------------------

SigmaU surface_tension(const std::vector<double>& u) {
    if (u.empty()) throw ArgumentError("surface_tension: empty slope list");
    double sum = 0.0;
    for (double v : u) sum += v;
    if (std::abs(sum) > 1e-9 * (1.0 + std::abs(u[0])))
        throw ArgumentError("surface_tension: slopes must sum to zero");
    const std::size_t n = u.size();
    SigmaU sig;
    sig.breaks.resize(n + 1);
    sig.values.resize(n + 1);
    std::vector<double> slopes = u;
    std::sort(slopes.begin(), slopes.end()); // increasing => convex
    for (std::size_t j = 0; j <= n; ++j)
        sig.breaks[j] =
            -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n);
    sig.values[0] = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        sig.values[j + 1] =
            sig.values[j] + slopes[j] * (2.0 / static_cast<double>(n));
    return sig;
}

double SigmaU::operator()(double x) const {
    const std::size_t n = values.size() - 1;
    if (x <= breaks.front()) x = breaks.front();
    if (x >= breaks.back()) x = breaks.back();
    // locate the segment
    std::size_t j =
        static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(),
                                                  x) -
                                 breaks.begin());
    if (j > 0) --j;
    if (j >= n) j = n - 1;
    const double slope =
        (values[j + 1] - values[j]) / (breaks[j + 1] - breaks[j]);
    return values[j] + slope * (x - breaks[j]);
}

// ---------------------------------------------------------------------------
// Direct maximization (FISTA over slope fields)
// ---------------------------------------------------------------------------

namespace {

struct SigmaProx {
    std::vector<double> breaks; // N+1 knots of sigma_U
    std::vector<double> slopes; // increasing

    // argmin_{s in [-1,1]} (s - v)^2 / 2 + c sigma(s): exact case split over
    // the segments (candidate v - c slope_j) and the kinks (subgradient lock).
    double scalar(double v, double c) const {
        const std::size_t n = slopes.size();
        if (v <= breaks.front() + c * slopes.front()) return breaks.front();
        if (v >= breaks.back() + c * slopes.back()) return breaks.back();
        for (std::size_t j = 0; j < n; ++j) {
            const double cand = v - c * slopes[j];
            if (cand > breaks[j] && cand < breaks[j + 1]) return cand;
            if (j + 1 < n) {
                const double bp = breaks[j + 1];
                if (v >= bp + c * slopes[j] && v <= bp + c * slopes[j + 1])
                    return bp;
            }
        }
        return std::clamp(v, -1.0, 1.0); // boundary ties / c == 0
    }

    void vec(const std::vector<double>& v, double c,
             std::vector<double>& out) const {
        for (std::size_t i = 0; i < v.size(); ++i) out[i] = scalar(v[i], c);
    }

    // Zero-sum constrained prox: bisection on the dual shift tau.  sum of the
    // unconstrained prox of v - tau is monotone decreasing in tau, so the
    // multiplier bracketing is exact.
    void zero_sum(const std::vector<double>& v, double c,
                  std::vector<double>& out) const {
        double vmax = 0.0, smax = 0.0;
        for (double x : v) vmax = std::max(vmax, std::abs(x));
        for (double s : slopes) smax = std::max(smax, std::abs(s));
        double lo = -(2.0 + vmax + c * smax);
        double hi = -lo;
        std::vector<double> shifted(v.size());
        for (int it = 0; it < 90; ++it) {
            const double tau = 0.5 * (lo + hi);
            double total = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i)
                total += scalar(v[i] - tau, c);
            (total > 0.0 ? lo : hi) = tau;
        }
        const double tau = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < v.size(); ++i)
            out[i] = scalar(v[i] - tau, c);
    }
};

double norm2(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x * x;
    return std::sqrt(acc);
}

} // namespace

MaximizeResult maximize_action(const std::vector<double>& u, double kappa,
                               const MaximizeOptions& opts) {
    if (!(kappa >= 0.0))
        throw ArgumentError("maximize_action: kappa must be nonnegative");
    if (opts.cells < 64)
        throw ArgumentError("maximize_action: need at least 64 cells");
    if (!(opts.half_width > 2.0))
        throw ArgumentError(
            "maximize_action: support must contain the bulk interval [-2, 2]");

    DiscreteProfile grid;
    grid.lo = -opts.half_width;
    grid.hi = opts.half_width;
    grid.slopes.assign(opts.cells, 0.0);
    const EnergyForm eq(grid);
    const std::size_t m = opts.cells;
    const double h = grid.cell_width();

    const SigmaU sig = surface_tension(u);
    SigmaProx prox;
    prox.breaks = sig.breaks;
    {
        std::vector<double> s = u;
        std::sort(s.begin(), s.end());
        prox.slopes = s;
    }

    // Largest |eigenvalue| of H by deterministic power iteration; FISTA step
    // 1 / (1.05 lambda_max).
    double lam = 0.0;
    {
        std::mt19937_64 eng(424242);
        std::vector<double> v(m), w(m);
        for (auto& x : v)
            x = 2.0 * (static_cast<double>(eng() >> 11) * 0x1.0p-53) - 1.0;
        for (int it = 0; it < 120; ++it) {
            eq.apply_h(v, w);
            lam = norm2(w);
            if (lam == 0.0) throw NumericError("maximize_action: zero operator");
            for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / lam;
        }
    }
    const double step = 1.0 / (1.05 * lam);
    const double gam = step * kappa * h;

    const auto objective = [&](const std::vector<double>& s) {
        double acc = eq.value(s);
        for (double x : s) acc += kappa * h * sig(x);
        return acc;
    };

    // Start from the arcsine slope field projected onto the zero-sum set.
    std::vector<double> x(m), y(m), xn(m), g(m), tmp(m);
    for (std::size_t i = 0; i < m; ++i)
        x[i] = std::clamp(vkls_slope(grid.mid(i)), -1.0, 1.0);
    prox.zero_sum(x, 0.0, y);
    x = y;
    double t = 1.0;
    double fbest = objective(x);

    long it = 0;
    double residual = 0.0;
    bool converged = false;
    for (; it < opts.iteration_cap; ++it) {
        eq.gradient(y, g);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = y[i] - step * g[i];
        prox.zero_sum(tmp, gam, xn);
        const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        for (std::size_t i = 0; i < m; ++i)
            tmp[i] = xn[i] + ((t - 1.0) / tn) * (xn[i] - x[i]);
        const double fn = objective(xn);
        if (fn > fbest + 1e-14) {
            // monotone restart: drop momentum when the objective backslides
            y = xn;
            t = 1.0;
        } else {
            y = tmp;
            t = tn;
        }
        fbest = std::min(fbest, fn);
        x = xn;
        if (it % 60 == 59) {
            eq.gradient(x, g);
            for (std::size_t i = 0; i < m; ++i) tmp[i] = x[i] - step * g[i];
            prox.zero_sum(tmp, gam, xn);
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double r = (x[i] - xn[i]) / step;
                acc += r * r;
            }
            residual = std::sqrt(acc);
            if (residual < opts.tolerance) {
                converged = true;
                ++it;
                break;
            }
        }
    }
    if (!converged) {
        eq.gradient(x, g);
        for (std::size_t i = 0; i < m; ++i) tmp[i] = x[i] - step * g[i];
        prox.zero_sum(tmp, gam, xn);
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double r = (x[i] - xn[i]) / step;
            acc += r * r;
        }
        residual = std::sqrt(acc);
        if (residual >= opts.tolerance) {
            std::ostringstream msg;
            msg << "maximize_action: no convergence after " << it
                << " iterations (residual " << residual << ", target "
                << opts.tolerance << ")";
            throw NumericError(msg.str());
        }
    }

    MaximizeResult res;
    res.profile = grid;
    res.profile.slopes = x;
    res.energy = eq.value(x);
    res.action = -objective(x);
    res.iterations = it;
    res.residual = residual;
    return res;
}

} // namespace ranpart
