#include "ranpart/profile.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ranpart {

double Profile::value(double x) const {
    if (breakpoints.empty() || x <= breakpoints.front()) return std::abs(x);
    double h = std::abs(breakpoints.front());
    for (size_t c = 0; c < slopes.size(); ++c) {
        const double right = breakpoints[c + 1];
        if (x < right) return h + slopes[c] * (x - breakpoints[c]);
        h += slopes[c] * (right - breakpoints[c]);
    }
    return h + (x - breakpoints.back()); // slope +1 on the far right
}

double Profile::slope_at(double x) const {
    if (breakpoints.empty() || x < breakpoints.front()) return -1.0;
    if (x >= breakpoints.back()) return 1.0;
    const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
    const size_t c = static_cast<size_t>(it - breakpoints.begin()) - 1;
    return slopes[std::min(c, slopes.size() - 1)];
}

double Profile::sup_distance(const Profile& g, double lo, double hi, int samples) const {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        worst = std::max(worst, std::abs(value(x) - g.value(x)));
    }
    return worst;
}

Profile diagram_profile(const Partition& lam, double scale) {
    if (scale <= 0) throw ArgumentError("diagram_profile: scale must be positive");
    Profile f;
    if (lam.empty()) return f;

    const int ell = lam.num_parts();
    const int top = lam.part(0);
    // Occupied offsets k (particle at k + 1/2) within the deviation window.
    std::set<int> occ;
    for (int i = 1; i <= ell; ++i) occ.insert(lam.part(i - 1) - i);

    for (int k = -ell; k <= top; ++k) f.breakpoints.push_back(scale * k);
    for (int k = -ell; k < top; ++k) f.slopes.push_back(occ.count(k) ? -1.0 : 1.0);
    return f;
}

} // namespace ranpart
