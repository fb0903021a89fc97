#pragma once

// Cumulant generating function of X² and its Fenchel–Legendre transform
//   Λ*(t) = sup_{θ≥0} { θt − Λ(θ) },  Λ(θ) = log E[exp(θX²)],
// which is the large-deviations rate of the empirical power of the source.

#include "srgc/sources.hpp"

namespace srgc::math {

/// Right end of the finiteness domain of Λ (θ < theta_max). Infinite for
/// bounded sources, 1/(2σ²) for Gaussian, 0 for Laplace.
double cgf_theta_max(const SourceSpec& source);

/// Essential supremum of X² (+inf when unbounded).
double ess_sup_x2(const SourceSpec& source);

/// log E[exp(θX²)]. Throws DomainError at or beyond theta_max, NumericError
/// when quadrature fails to converge.
double cgf_x2(const SourceSpec& source, double theta);

/// Λ*(t) for t ≥ 0. Zero for t ≤ σ²; +inf above the essential supremum of X²
/// (for a discrete source, −log P(X² = max) exactly at the supremum). For a
/// source whose Λ is infinite on θ > 0 the supremum is attained at θ = 0.
double rate_function_x2(const SourceSpec& source, double t);

}  // namespace srgc::math
