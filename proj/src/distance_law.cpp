#include "srgc/distance_law.hpp"

#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "srgc/errors.hpp"

namespace srgc::law {

namespace {

void check_args(std::int64_t n, double a, double P)
{
    if (n < 2) throw ConfigError("distance law requires n >= 2, got " + std::to_string(n));
    if (!(P > 0.0)) throw ConfigError("distance law requires codeword power P > 0");
    if (!(a >= 0.0) || !std::isfinite(a)) {
        throw ConfigError("distance law requires a finite distance a >= 0");
    }
}

// P(cos φ ≥ u0) for the first coordinate of a uniform point on S^{n−1}.
double upper_cos_tail(std::int64_t n, double u0)
{
    if (u0 >= 1.0) return 0.0;
    if (u0 <= -1.0) return 1.0;
    const double half_dof = 0.5 * static_cast<double>(n - 1);
    const double x = (1.0 - u0) * (1.0 + u0);
    const double half_ib = 0.5 * boost::math::ibeta(half_dof, 0.5, x);
    return u0 >= 0.0 ? half_ib : 1.0 - half_ib;
}

}  // namespace

double non_excess_probability(CodebookKind kind, std::int64_t n, double a, double P, double t)
{
    check_args(n, a, P);
    if (t < 0.0) return 0.0;
    const double nd = static_cast<double>(n);
    if (kind == CodebookKind::iid) {
        const double x = nd * t / P;
        if (a == 0.0) return boost::math::cdf(boost::math::chi_squared_distribution<double>(nd), x);
        return boost::math::cdf(
            boost::math::non_central_chi_squared_distribution<double>(nd, nd * a / P), x);
    }
    if (a == 0.0) return t >= P ? 1.0 : 0.0;
    return upper_cos_tail(n, (a + P - t) / (2.0 * std::sqrt(a * P)));
}

double distortion_quantile(CodebookKind kind, std::int64_t n, double a, double P, double p)
{
    check_args(n, a, P);
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("distortion_quantile: p must lie in (0,1), got " + std::to_string(p));
    }
    const double nd = static_cast<double>(n);
    if (kind == CodebookKind::iid) {
        double x;
        if (a == 0.0) {
            x = boost::math::quantile(boost::math::chi_squared_distribution<double>(nd), p);
        } else {
            x = boost::math::quantile(
                boost::math::non_central_chi_squared_distribution<double>(nd, nd * a / P), p);
        }
        return P * x / nd;
    }
    if (a == 0.0) return P;
    const double half_dof = 0.5 * (nd - 1.0);
    const double root_ap = std::sqrt(a * P);
    if (p <= 0.5) {
        // cos φ = u0 ≥ 0 with 1 − u0² = x; 1 − u0 = x / (1 + √(1 − x)).
        const double x = boost::math::ibeta_inv(half_dof, 0.5, 2.0 * p);
        const double one_minus_u0 = x / (1.0 + std::sqrt(1.0 - x));
        const double gap = std::sqrt(a) - std::sqrt(P);
        return gap * gap + 2.0 * root_ap * one_minus_u0;
    }
    const double x = boost::math::ibeta_inv(half_dof, 0.5, 2.0 * (1.0 - p));
    return a + P + 2.0 * root_ap * std::sqrt(1.0 - x);
}

double sample_min_distortion(CodebookKind kind, std::int64_t n, double a, double P, double M,
                             Rng& rng)
{
    if (!(M >= 1.0)) throw ConfigError("sample_min_distortion requires M >= 1");
    // P(min ≤ t) = 1 − (1 − F(t))^M  ⇒  F(t) = 1 − (1 − U)^{1/M}.
    const double u = rng.uniform();
    double p = -std::expm1(std::log1p(-u) / M);
    if (!(p > 0.0)) p = u / M;
    if (p >= 1.0) p = std::nextafter(1.0, 0.0);
    return distortion_quantile(kind, n, a, P, p);
}

TrialOutcome run_trial_distance_law(const SchemeConfig& config, const SourceSpec& source,
                                    Rng& rng)
{
    config.validate();
    const auto n = static_cast<std::size_t>(config.n);
    long double power = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = source.draw(rng);
        power += static_cast<long double>(v) * v;
    }
    const double w = static_cast<double>(power / static_cast<long double>(n));

    TrialOutcome out;
    out.d1 = sample_min_distortion(config.kind1, config.n, w, config.P_Y(),
                                   static_cast<double>(config.M1), rng);
    out.d2 = sample_min_distortion(config.kind2, config.n, out.d1, config.P_Z(),
                                   static_cast<double>(config.M2), rng);
    out.excess1 = out.d1 > config.D1;
    out.excess2 = out.d2 > config.D2;
    out.joint = out.excess1 || out.excess2;
    return out;
}

}  // namespace srgc::law
