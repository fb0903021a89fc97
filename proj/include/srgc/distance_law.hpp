#pragma once

// Exact law of the distortion between a fixed sequence and a random codeword.
//
// For a sequence x at distance a = d(x, c) from the codebook center c:
//   iid:       n·d(x, U)/P ~ noncentral χ²(n, n·a/P)
//   spherical: d(x, U) = a + P − 2√(aP)·cos φ, with cos φ distributed as the
//              first coordinate of a uniform point on the unit sphere.
// The minimum over M independent codewords has CDF 1 − (1 − F)^M, so it can
// be drawn by inversion without materializing the codebook. Because every
// codeword law depends on x only through a, this reproduces the joint law of
// (d1, d2) of the explicit scheme for any M1, M2.

#include <cstdint>

#include "srgc/codec.hpp"

namespace srgc::law {

/// P(d(x, U) ≤ t) for U ~ f_kind(· | c, P), a = d(x, c).
double non_excess_probability(CodebookKind kind, std::int64_t n, double a, double P, double t);

/// Quantile of d(x, U): smallest t with P(d(x, U) ≤ t) ≥ p, p ∈ (0, 1).
double distortion_quantile(CodebookKind kind, std::int64_t n, double a, double P, double p);

/// Draw min_{i ≤ M} d(x, U_i) by inversion. `M` may exceed 2^64 (it is a
/// real-valued count).
double sample_min_distortion(CodebookKind kind, std::int64_t n, double a, double P, double M,
                             Rng& rng);

/// Same distribution of outcomes as run_trial, drawn through the distance laws.
TrialOutcome run_trial_distance_law(const SchemeConfig& config, const SourceSpec& source,
                                    Rng& rng);

}  // namespace srgc::law
