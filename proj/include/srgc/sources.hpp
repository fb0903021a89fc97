#pragma once

// Memoryless source models. A SourceSpec carries exact second and fourth
// moments (needed by the dispersion formulas) and draws i.i.d. samples from a
// caller-owned Rng.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srgc/rng.hpp"

namespace srgc {

enum class SourceFamily { gaussian, uniform, laplace, two_point, discrete, custom };

/// User-supplied source. Moments are declared, never estimated.
struct CustomSource {
    std::string name = "custom";
    double second_moment = 0.0;
    double fourth_moment = 0.0;
    bool sixth_moment_finite = true;
    std::function<double(Rng&)> draw;
    /// Optional log E[exp(θX²)]; finite on [0, theta_max).
    std::function<double(double)> cgf_x2;
    double theta_max = 0.0;
    /// Essential supremum of X² (+inf when unbounded).
    double ess_sup_x2 = std::numeric_limits<double>::infinity();
};

class SourceSpec {
public:
    static SourceSpec gaussian(double variance);
    /// Uniform on [-a, a].
    static SourceSpec uniform(double half_width);
    /// Density exp(-|x|/b)/(2b).
    static SourceSpec laplace(double scale);
    /// ±c with probability ½ each.
    static SourceSpec two_point(double c);
    /// Finite-support pmf. Probabilities must sum to 1 within 1e-12.
    /// With `center` set, the support is shifted to zero mean.
    static SourceSpec discrete(std::vector<double> values, std::vector<double> probs,
                               bool center = false);
    static SourceSpec custom(CustomSource src);

    SourceFamily family() const noexcept { return family_; }
    double second_moment() const noexcept { return sigma2_; }
    double fourth_moment() const noexcept { return zeta_; }
    bool sixth_moment_finite() const noexcept { return sixth_finite_; }

    /// Family parameter: variance, half-width, scale or c (unused otherwise).
    double parameter() const noexcept { return param_; }
    const std::vector<double>& support() const noexcept { return values_; }
    const std::vector<double>& pmf() const noexcept { return probs_; }
    const CustomSource* custom_source() const noexcept
    {
        return custom_ ? &*custom_ : nullptr;
    }

    /// Short human-readable label, e.g. "gaussian(var=1)".
    std::string describe() const;

    double draw(Rng& rng) const;

private:
    SourceSpec() = default;
    void validate_moments() const;

    SourceFamily family_ = SourceFamily::gaussian;
    double param_ = 0.0;
    double sigma2_ = 0.0;
    double zeta_ = 0.0;
    bool sixth_finite_ = true;
    std::vector<double> values_;
    std::vector<double> probs_;
    std::vector<double> cdf_;
    std::optional<CustomSource> custom_;
};

struct Moments {
    double sigma2;      ///< E[X²]
    double zeta;        ///< E[X⁴]
    double dispersion;  ///< (ζ − σ⁴)/(4σ⁴)
};

Moments moments(const SourceSpec& spec);

/// Fill `out` with i.i.d. draws.
void sample(const SourceSpec& spec, std::span<double> out, Rng& rng);
std::vector<double> sample(const SourceSpec& spec, std::size_t n, Rng& rng);

}  // namespace srgc
