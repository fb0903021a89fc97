#include "srgc/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "srgc/errors.hpp"
#include "srgc/roots.hpp"

namespace srgc::math {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kQuadAbsTol = 1e-12;

// ∫ f over [a, b] by adaptive Gauss–Kronrod with an absolute error target.
template <class F>
double integrate(F&& f, double a, double b, const char* what)
{
    double err = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, b, 20, kQuadAbsTol, &err);
    if (!(err <= 1e3 * kQuadAbsTol) || !std::isfinite(value)) {
        throw NumericError(std::string("quadrature for ") + what +
                           " did not converge: error estimate " + std::to_string(err));
    }
    return value;
}

// log E[exp(θX²)] for X uniform on [-a, a], i.e. log ∫_0^1 exp(c·u²) du with
// c = θa². For c > 0 the integrand is rescaled by exp(−c) to stay in [0, 1].
double uniform_cgf(double a, double theta)
{
    const double c = theta * a * a;
    if (c == 0.0) return 0.0;
    if (c > 0.0) {
        const double i = integrate([c](double u) { return std::exp(c * (u * u - 1.0)); }, 0.0,
                                   1.0, "uniform cgf");
        return c + std::log(i);
    }
    return std::log(integrate([c](double u) { return std::exp(c * u * u); }, 0.0, 1.0,
                              "uniform cgf"));
}

double laplace_cgf(double b, double theta)
{
    if (theta == 0.0) return 0.0;
    // θ < 0: E[exp(θX²)] = ∫_0^∞ exp(θx² − x/b)/b dx.
    const double v = integrate(
        [theta, b](double x) { return std::exp(theta * x * x - x / b) / b; }, 0.0, kInf,
        "laplace cgf");
    return std::log(v);
}

double discrete_cgf(const SourceSpec& s, double theta)
{
    const auto& v = s.support();
    const auto& p = s.pmf();
    double top = -kInf;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (p[i] > 0.0) top = std::max(top, theta * v[i] * v[i]);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (p[i] > 0.0) acc += p[i] * std::exp(theta * v[i] * v[i] - top);
    }
    return top + std::log(acc);
}

}  // namespace

double cgf_theta_max(const SourceSpec& source)
{
    switch (source.family()) {
    case SourceFamily::gaussian: return 1.0 / (2.0 * source.second_moment());
    case SourceFamily::laplace: return 0.0;
    case SourceFamily::uniform:
    case SourceFamily::two_point:
    case SourceFamily::discrete: return kInf;
    case SourceFamily::custom: return source.custom_source()->theta_max;
    }
    return 0.0;
}

double ess_sup_x2(const SourceSpec& source)
{
    switch (source.family()) {
    case SourceFamily::gaussian:
    case SourceFamily::laplace: return kInf;
    case SourceFamily::uniform:
    case SourceFamily::two_point: return source.parameter() * source.parameter();
    case SourceFamily::discrete: {
        double m = 0.0;
        for (std::size_t i = 0; i < source.support().size(); ++i) {
            if (source.pmf()[i] > 0.0) m = std::max(m, source.support()[i] * source.support()[i]);
        }
        return m;
    }
    case SourceFamily::custom: return source.custom_source()->ess_sup_x2;
    }
    return kInf;
}

double cgf_x2(const SourceSpec& source, double theta)
{
    if (!std::isfinite(theta)) throw DomainError("cgf_x2: theta must be finite");
    const double tmax = cgf_theta_max(source);
    if (theta > 0.0 && theta >= tmax) {
        throw DomainError("cgf_x2: theta=" + std::to_string(theta) +
                          " is outside the finiteness domain [0, " + std::to_string(tmax) +
                          ") of " + source.describe());
    }
    switch (source.family()) {
    case SourceFamily::gaussian:
        return -0.5 * std::log1p(-2.0 * source.second_moment() * theta);
    case SourceFamily::uniform: return uniform_cgf(source.parameter(), theta);
    case SourceFamily::laplace: return laplace_cgf(source.parameter(), theta);
    case SourceFamily::two_point: return theta * source.second_moment();
    case SourceFamily::discrete: return discrete_cgf(source, theta);
    case SourceFamily::custom: {
        const auto* c = source.custom_source();
        if (!c->cgf_x2) throw DomainError("cgf_x2: custom source '" + c->name + "' has no cgf");
        return c->cgf_x2(theta);
    }
    }
    return 0.0;
}

double rate_function_x2(const SourceSpec& source, double t)
{
    if (!(t >= 0.0)) throw DomainError("rate_function_x2: threshold must be >= 0");
    if (t <= source.second_moment()) return 0.0;
    const double sup = ess_sup_x2(source);
    if (t > sup) return kInf;
    if (t == sup) {
        if (source.family() == SourceFamily::discrete) {
            double atom = 0.0;
            for (std::size_t i = 0; i < source.support().size(); ++i) {
                const double v = source.support()[i];
                if (v * v == sup) atom += source.pmf()[i];
            }
            return -std::log(atom);
        }
        if (source.family() == SourceFamily::two_point) return 0.0;
        return kInf;
    }
    const double tmax = cgf_theta_max(source);
    if (tmax == 0.0) return 0.0;

    auto objective = [&](double theta) { return theta * t - cgf_x2(source, theta); };
    double hi;
    if (std::isfinite(tmax)) {
        hi = tmax * (1.0 - 1e-9);
    } else {
        // Concave objective: double the bracket until it starts to decrease.
        double h = 1.0 / source.second_moment();
        double gh = objective(h);
        for (int k = 0;; ++k) {
            if (k > 200) throw NumericError("rate_function_x2: could not bracket the maximizer");
            const double g2 = objective(2.0 * h);
            if (g2 < gh) break;
            h *= 2.0;
            gh = g2;
        }
        hi = 2.0 * h;
    }
    const auto best = roots::golden_maximize(objective, 0.0, hi);
    return std::max(0.0, best.value);
}

}  // namespace srgc::math
