#include "srgc/core_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "srgc/errors.hpp"
#include "srgc/roots.hpp"

namespace srgc::math {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_positive(double v, const char* name, const char* fn)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(fn) + ": " + name + " must be positive and finite, got " +
                          std::to_string(v));
    }
}

void require_nonnegative(double v, const char* name, const char* fn)
{
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(fn) + ": " + name + " must be non-negative, got " +
                          std::to_string(v));
    }
}

}  // namespace

double log_gamma_ratio(double a, double b)
{
    require_positive(a, "a", "log_gamma_ratio");
    require_positive(b, "b", "log_gamma_ratio");
    if (a == b) return 0.0;
    const double delta = a - b;
    // Γ(b)/Γ(b+δ) avoids the cancellation of two large lgamma values.
    if (std::abs(delta) <= 32.0) {
        return -std::log(boost::math::tgamma_delta_ratio(b, delta));
    }
    return boost::math::lgamma(a) - boost::math::lgamma(b);
}

double q_func(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double q_inv(double p)
{
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("q_inv: probability must lie in (0,1), got " + std::to_string(p));
    }
    return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double r_iid_tilted(double s, double w, double P, double D)
{
    require_positive(P, "P", "r_iid_tilted");
    if (!(1.0 + 2.0 * s > 0.0)) {
        throw DomainError("r_iid_tilted: requires 1+2s > 0, got s=" + std::to_string(s));
    }
    const double a = 1.0 + 2.0 * s;
    return 0.5 * std::log1p(2.0 * s) + s * w / (a * P) - s * D / P;
}

double s_star(double w, double P, double D)
{
    require_nonnegative(w, "w", "s_star");
    require_positive(P, "P", "s_star");
    require_positive(D, "D", "s_star");
    const double s = (P - 2.0 * D + std::sqrt(P * P + 4.0 * w * D)) / (4.0 * D);
    return positive_part(s);
}

double r_iid(double w, double P, double D)
{
    const double s = s_star(w, P, D);
    if (s == 0.0) return 0.0;
    // Clamp rounding noise near w = |D-P|^+, where the exact value is 0.
    return positive_part(r_iid_tilted(s, w, P, D));
}

double kappa(double s, double w, double P)
{
    require_positive(P, "P", "kappa");
    const double a = 1.0 + 2.0 * s;
    if (!(a > 0.0)) {
        throw DomainError("kappa: requires 1+2s > 0, got s=" + std::to_string(s));
    }
    const double num = P * a + 2.0 * w;
    return num * num / (P * a * a * a);
}

RatePrefactor phi_iid_rate_and_prefactor(double l, double P_Z, double D2)
{
    const double edge = positive_part(D2 - P_Z);
    if (!(l > edge)) {
        throw DomainError("phi_iid_rate_and_prefactor: requires l > |D2-P_Z|^+ = " +
                          std::to_string(edge) + ", got l=" + std::to_string(l));
    }
    const double s = s_star(l, P_Z, D2);
    if (!(s > 0.0)) {
        throw DomainError("phi_iid_rate_and_prefactor: degenerate tilt at l=" + std::to_string(l));
    }
    return {r_iid(l, P_Z, D2), 1.0 / (s * std::sqrt(kappa(s, l, P_Z)))};
}

double invert_r_iid(double target, double P, double D)
{
    if (!(target > 0.0) || !std::isfinite(target)) {
        throw DomainError("invert_r_iid: target rate must be positive, got " +
                          std::to_string(target));
    }
    require_positive(P, "P", "invert_r_iid");
    require_positive(D, "D", "invert_r_iid");
    auto f = [&](double w) { return r_iid(w, P, D); };
    // For P > D the rate is already positive at w = 0; smaller targets have no root.
    if (P > D && target <= f(0.0)) {
        throw DomainError("invert_r_iid: target " + std::to_string(target) +
                          " is not above r_iid(0, P, D) = " + std::to_string(f(0.0)));
    }
    const double lo = positive_part(D - P) * (1.0 + 1e-9) + 1e-12;
    if (f(lo) >= target) return lo;
    const double hi = roots::expand_upper(f, target, 2.0 * lo + P + D);
    return roots::bisect_increasing(f, target, lo, hi, {.rel_tol = 1e-15});
}

double r_sp(double w, double P, double D)
{
    require_positive(w, "w", "r_sp");
    require_positive(P, "P", "r_sp");
    const double c = w + P - D;
    const double arg = 1.0 - c * c / (4.0 * w * P);
    if (!(arg > 0.0)) {
        throw DomainError("r_sp: cap is geometrically infeasible, (w+P-D)^2 >= 4wP for w=" +
                          std::to_string(w) + ", P=" + std::to_string(P) +
                          ", D=" + std::to_string(D));
    }
    return -0.5 * std::log(arg);
}

double log_h_lower(std::int64_t n, double l, double P_Z, double D2)
{
    if (n < 2) throw DomainError("h_lower: requires n >= 2, got " + std::to_string(n));
    require_positive(P_Z, "P_Z", "h_lower");
    require_positive(D2, "D2", "h_lower");
    require_nonnegative(l, "l", "h_lower");
    const double root_l = std::sqrt(l);
    const double beta1 = std::sqrt(P_Z) - std::sqrt(D2);
    const double beta2 = std::sqrt(P_Z) + std::sqrt(D2);
    if (root_l < positive_part(beta1) || root_l > beta2) return kNegInf;
    // Sphere entirely inside the D2-ball about x: the probability is exactly 1.
    if (l == 0.0) return P_Z <= D2 ? 0.0 : kNegInf;
    const double c = l + P_Z - D2;
    if (c < 0.0 && c * c >= 4.0 * l * P_Z) return 0.0;
    const double base = 1.0 - c * c / (4.0 * l * P_Z);
    if (!(base > 0.0)) return kNegInf;
    const double nd = static_cast<double>(n);
    const double log_pref = log_gamma_ratio((nd + 2.0) / 2.0, (nd + 1.0) / 2.0) -
                            0.5 * std::log(std::numbers::pi) - std::log(nd);
    return log_pref + 0.5 * (nd - 1.0) * std::log(base);
}

double h_lower(std::int64_t n, double l, double P_Z, double D2)
{
    return std::exp(log_h_lower(n, l, P_Z, D2));
}

double log_g_bar(std::int64_t n, double w, double P_Y, double d_prime)
{
    if (n < 4) throw DomainError("g_bar: requires n >= 4, got " + std::to_string(n));
    const double nd = static_cast<double>(n);
    const double rate = r_sp(w, P_Y, d_prime);
    return log_gamma_ratio(nd / 2.0, (nd - 1.0) / 2.0) - 0.5 * std::log(std::numbers::pi) -
           (nd - 3.0) * rate;
}

double g_bar(std::int64_t n, double w, double P_Y, double d_prime)
{
    return std::exp(log_g_bar(n, w, P_Y, d_prime));
}

}  // namespace srgc::math
