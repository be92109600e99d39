#pragma once

#include <vector>

#include "ranpart/partition.hpp"

namespace ranpart {

// Piecewise-linear 1-Lipschitz function equal to |x| far out: the rotated
// (Russian-convention) boundary of a Young diagram, or any limit-shape
// candidate. Slopes live on the cells between consecutive breakpoints; outside
// the breakpoint range the function is exactly |x|.
struct Profile {
    std::vector<double> breakpoints; // sorted, size m+1 (possibly empty)
    std::vector<double> slopes;      // size m, each in [-1, 1]

    double value(double x) const; // f(x); anchored by f = |x| on the far left
    double slope_at(double x) const;

    // sup_{x in [lo, hi]} |f(x) - g(x)| on a uniform grid of `samples` points.
    double sup_distance(const Profile& g, double lo, double hi, int samples = 2001) const;
};

// Profile of a partition, both axes scaled by `scale`. At scale = 1 the area
// between the profile and |x| is exactly 2|lambda|; scale = 1/sqrt(|lambda|)
// normalizes that area to 2.
Profile diagram_profile(const Partition& lam, double scale = 1.0);

} // namespace ranpart
