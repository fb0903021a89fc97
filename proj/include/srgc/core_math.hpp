#pragma once

// Closed-form rate functions of Gaussian-codebook covering and the special
// functions they are built from. All rates are in nats. Every function here
// is pure and thread-safe.

#include <cstdint>

namespace srgc::math {

/// |a|^+ = max{0, a}.
inline double positive_part(double a) noexcept { return a > 0.0 ? a : 0.0; }

/// log Γ(a) − log Γ(b), accurate when a and b are close and large
/// (up to ~1e7). Throws DomainError unless a > 0 and b > 0.
double log_gamma_ratio(double a, double b);

/// Gaussian complementary CDF.
double q_func(double x);

/// Inverse of q_func on (0, 1). Throws DomainError outside.
double q_inv(double p);

// ---------------------------------------------------------------------------
// i.i.d. Gaussian codebook: exponent of the non-excess-distortion probability
// of a length-n sequence with power w against codewords N(c, P·I), target
// distortion D.

/// ½log(1+2s) + s·w/((1+2s)P) − s·D/P.
double r_iid_tilted(double s, double w, double P, double D);

/// Optimal tilt max{0, (P − 2D + √(P² + 4wD)) / (4D)}. Positive iff w > D − P,
/// so always positive when P > D.
double s_star(double w, double P, double D);

/// r_iid_tilted evaluated at s_star. Non-negative, zero iff w ≤ D − P. When
/// P > D the value at w = 0 is the chi-square rate ½log(P/D) − (P−D)/(2P).
double r_iid(double w, double P, double D);

/// (P(1+2s) + 2w)² / (P(1+2s)³): second derivative of the tilted log-MGF.
double kappa(double s, double w, double P);

struct RatePrefactor {
    double rate;       ///< exponential rate (nats)
    double prefactor;  ///< sub-exponential factor 1/(s*·√κ(s*))
};

/// Strong large-deviations form of the second-layer non-excess probability,
/// Φ_iid(n, l) ≈ prefactor·exp(−n·rate). Requires l > |D2−P_Z|^+.
RatePrefactor phi_iid_rate_and_prefactor(double l, double P_Z, double D2);

/// Unique w > |D−P|^+ with r_iid(w, P, D) = target (target > 0). Throws
/// DomainError when P > D and target ≤ r_iid(0, P, D) (no root on w ≥ 0).
double invert_r_iid(double target, double P, double D);

// ---------------------------------------------------------------------------
// Spherical codebook geometry.

/// −½ log(1 − (w+P−D)²/(4wP)). Throws DomainError when the log argument is
/// not positive (cap geometrically infeasible) or w, P not positive.
double r_sp(double w, double P, double D);

/// Lower bound on the probability that a uniform point on the sphere of
/// radius √(n·P_Z) about y falls within distance √(n·D2) of x, where
/// d(x, y) = l. Zero outside √l ∈ [|β1|^+, β2] with β1 = √P_Z − √D2,
/// β2 = √P_Z + √D2. Log form returns −inf for zero.
double log_h_lower(std::int64_t n, double l, double P_Z, double D2);
double h_lower(std::int64_t n, double l, double P_Z, double D2);

/// (1/√π)·Γ(n/2)/Γ((n−1)/2)·exp(−(n−3)·r_sp(w, P_Y, d_prime)); requires n ≥ 4.
double log_g_bar(std::int64_t n, double w, double P_Y, double d_prime);
double g_bar(std::int64_t n, double w, double P_Y, double d_prime);

}  // namespace srgc::math
