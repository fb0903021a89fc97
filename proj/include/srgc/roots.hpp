#pragma once

// One-dimensional solvers used by the calculators: bracketed bisection for
// monotone equations and golden-section search for unimodal maximization.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

#include "srgc/errors.hpp"

namespace srgc::roots {

struct BisectionOptions {
    double rel_tol = 1e-14;
    double abs_tol = 0.0;
    int max_iter = 400;
};

/// Solve f(x) = target for increasing f on [lo, hi]. Requires
/// f(lo) <= target <= f(hi); otherwise throws NumericError.
template <class F>
double bisect_increasing(F&& f, double target, double lo, double hi,
                         const BisectionOptions& opt = {})
{
    double flo = f(lo);
    double fhi = f(hi);
    if (!(flo <= target && target <= fhi)) {
        throw NumericError("bisection bracket [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "] does not contain the target " +
                           std::to_string(target) + " (f(lo)=" + std::to_string(flo) +
                           ", f(hi)=" + std::to_string(fhi) + ")");
    }
    if (flo == target) return lo;
    if (fhi == target) return hi;
    for (int it = 0; it < opt.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= opt.rel_tol * std::abs(hi) + opt.abs_tol) break;
        const double fmid = f(mid);
        if (fmid < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Grow `hi` geometrically from `start` until f(hi) >= target. Throws
/// NumericError after `max_doublings` attempts.
template <class F>
double expand_upper(F&& f, double target, double start, int max_doublings = 2000)
{
    double hi = start;
    for (int k = 0; k < max_doublings; ++k) {
        if (f(hi) >= target) return hi;
        hi *= 2.0;
        if (!std::isfinite(hi)) break;
    }
    throw NumericError("could not bracket target " + std::to_string(target) +
                       " by geometric expansion from " + std::to_string(start));
}

struct GoldenResult {
    double argmax;
    double value;
};

/// Maximize a unimodal function on [lo, hi] by golden-section search.
/// The bracket shrinks until its width is below x_tol·max(1, |hi|); for a
/// smooth objective the value error is quadratic in that width.
template <class F>
GoldenResult golden_maximize(F&& f, double lo, double hi, double x_tol = 1e-12,
                             int max_iter = 500)
{
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter; ++it) {
        if (hi - lo <= x_tol * std::max(1.0, std::abs(hi))) break;
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    // Endpoints matter when the optimum sits on the boundary (e.g. θ = 0).
    GoldenResult best{x1, f1};
    if (f2 > best.value) best = {x2, f2};
    const double flo = f(lo);
    if (flo > best.value) best = {lo, flo};
    return best;
}

}  // namespace srgc::roots
