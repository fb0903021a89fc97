#include "srgc/sources.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "srgc/errors.hpp"

namespace srgc {

namespace {

void require_positive_param(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("source parameter ") + what +
                          " must be positive and finite, got " + std::to_string(v));
    }
}

}  // namespace

SourceSpec SourceSpec::gaussian(double variance)
{
    require_positive_param(variance, "variance");
    SourceSpec s;
    s.family_ = SourceFamily::gaussian;
    s.param_ = variance;
    s.sigma2_ = variance;
    s.zeta_ = 3.0 * variance * variance;
    return s;
}

SourceSpec SourceSpec::uniform(double half_width)
{
    require_positive_param(half_width, "half_width");
    SourceSpec s;
    s.family_ = SourceFamily::uniform;
    s.param_ = half_width;
    const double a2 = half_width * half_width;
    s.sigma2_ = a2 / 3.0;
    s.zeta_ = a2 * a2 / 5.0;
    return s;
}

SourceSpec SourceSpec::laplace(double scale)
{
    require_positive_param(scale, "scale");
    SourceSpec s;
    s.family_ = SourceFamily::laplace;
    s.param_ = scale;
    const double b2 = scale * scale;
    s.sigma2_ = 2.0 * b2;
    s.zeta_ = 24.0 * b2 * b2;
    return s;
}

SourceSpec SourceSpec::two_point(double c)
{
    require_positive_param(c, "c");
    SourceSpec s;
    s.family_ = SourceFamily::two_point;
    s.param_ = c;
    s.sigma2_ = c * c;
    s.zeta_ = c * c * c * c;
    return s;
}

SourceSpec SourceSpec::discrete(std::vector<double> values, std::vector<double> probs,
                                bool center)
{
    if (values.empty() || values.size() != probs.size()) {
        throw ConfigError("discrete source: support and pmf must be non-empty and of equal length");
    }
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ConfigError("discrete source: pmf entries must be non-negative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "discrete source: pmf must sum to 1 within 1e-12, sums to " << total;
        throw ConfigError(os.str());
    }
    if (center) {
        const double mean = std::inner_product(values.begin(), values.end(), probs.begin(), 0.0);
        for (double& v : values) v -= mean;
    }
    SourceSpec s;
    s.family_ = SourceFamily::discrete;
    s.sigma2_ = 0.0;
    s.zeta_ = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v2 = values[i] * values[i];
        s.sigma2_ += probs[i] * v2;
        s.zeta_ += probs[i] * v2 * v2;
    }
    s.cdf_.resize(probs.size());
    std::partial_sum(probs.begin(), probs.end(), s.cdf_.begin());
    s.values_ = std::move(values);
    s.probs_ = std::move(probs);
    s.validate_moments();
    return s;
}

SourceSpec SourceSpec::custom(CustomSource src)
{
    if (!src.draw) throw ConfigError("custom source '" + src.name + "' needs a sampler");
    SourceSpec s;
    s.family_ = SourceFamily::custom;
    s.sigma2_ = src.second_moment;
    s.zeta_ = src.fourth_moment;
    s.sixth_finite_ = src.sixth_moment_finite;
    s.custom_ = std::move(src);
    s.validate_moments();
    return s;
}

void SourceSpec::validate_moments() const
{
    if (!(sigma2_ > 0.0) || !std::isfinite(sigma2_)) {
        throw ConfigError("source requires E[X^2] > 0, got " + std::to_string(sigma2_));
    }
    // Jensen: E[X⁴] ≥ E[X²]²; allow rounding slack.
    if (!(zeta_ >= sigma2_ * sigma2_ * (1.0 - 1e-12)) || !std::isfinite(zeta_)) {
        throw ConfigError("source requires E[X^4] >= E[X^2]^2, got zeta=" + std::to_string(zeta_));
    }
}

std::string SourceSpec::describe() const
{
    std::ostringstream os;
    os.precision(12);
    switch (family_) {
    case SourceFamily::gaussian: os << "gaussian(var=" << param_ << ")"; break;
    case SourceFamily::uniform: os << "uniform(a=" << param_ << ")"; break;
    case SourceFamily::laplace: os << "laplace(b=" << param_ << ")"; break;
    case SourceFamily::two_point: os << "two_point(c=" << param_ << ")"; break;
    case SourceFamily::discrete: os << "discrete(k=" << values_.size() << ")"; break;
    case SourceFamily::custom: os << custom_->name; break;
    }
    return os.str();
}

double SourceSpec::draw(Rng& rng) const
{
    switch (family_) {
    case SourceFamily::gaussian: return std::sqrt(param_) * rng.normal();
    case SourceFamily::uniform: return param_ * (2.0 * rng.uniform() - 1.0);
    case SourceFamily::laplace: {
        const double u = rng.uniform() - 0.5;
        const double mag = -param_ * std::log1p(-2.0 * std::abs(u));
        return u < 0.0 ? -mag : mag;
    }
    case SourceFamily::two_point: return (rng.next_u64() >> 63) ? param_ : -param_;
    case SourceFamily::discrete: {
        const double u = rng.uniform() * cdf_.back();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()),
                                               values_.size() - 1);
        return values_[idx];
    }
    case SourceFamily::custom: return custom_->draw(rng);
    }
    return 0.0;
}

Moments moments(const SourceSpec& spec)
{
    const double s2 = spec.second_moment();
    const double z = spec.fourth_moment();
    // Clamp tiny negative values caused by rounding in ζ − σ⁴.
    const double v = std::max(0.0, (z - s2 * s2) / (4.0 * s2 * s2));
    return {s2, z, v};
}

void sample(const SourceSpec& spec, std::span<double> out, Rng& rng)
{
    for (double& x : out) x = spec.draw(rng);
}

std::vector<double> sample(const SourceSpec& spec, std::size_t n, Rng& rng)
{
    std::vector<double> out(n);
    sample(spec, out, rng);
    return out;
}

}  // namespace srgc
