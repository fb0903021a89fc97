#pragma once

// Calculators for the asymptotic characterizations of the layered scheme:
// first-order rate region, second-order code sizes, moderate-deviations
// constants and large-deviations exponents (rate-adaptive λ and λ = 1).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srgc/codec.hpp"
#include "srgc/sources.hpp"

namespace srgc {

/// Rate pair (nats/symbol) together with the distortion setting.
struct RateQuery {
    double R1 = 0.0;
    double R2 = 0.0;
    double sigma2 = 1.0;
    double D1 = 0.5;
    double D2 = 0.25;

    /// Throws ConfigError unless R1, R2 ≥ 0 and σ² > D1 > D2 > 0.
    void validate() const;
};

enum class RegionStatus { inside, boundary, outside };
std::string to_string(RegionStatus status);

struct RegionResult {
    RegionStatus status = RegionStatus::outside;
    /// η ∈ [D2/D1, 1] with R1 ≥ ½log(σ²/(ηD1)) and R2 ≥ ½log(ηD1/D2);
    /// present unless the pair is outside.
    std::optional<double> witness_eta;
};

/// Classification against R1 ≥ ½log(σ²/D1), R1 + R2 ≥ ½log(σ²/D2), with
/// tolerance 1e-12 on both constraints.
RegionResult region_contains(const RateQuery& q);

struct LambdaChoice {
    double lambda = 1.0;
    bool degenerate = false;  ///< R2 = 0: λ = D2/D1, empty second layer
};

/// λ = min{D2·e^{2R2}/D1, 1}.
LambdaChoice lambda_for_rates(double R2, double D1, double D2);

struct SecondOrderPlan {
    std::int64_t n = 0;
    double lambda = 1.0;
    double epsilon = 0.5;
    double c_log = 0.0;
    double logM1 = 0.0;
    double logM2 = 0.0;
    std::uint64_t M1 = 1;  ///< ⌈e^{logM1}⌉, saturating
    std::uint64_t M2 = 1;
    std::string case_label;  ///< "i" when λ < 1, "iii" (corner point) when λ = 1
};

/// Code sizes meeting a JEP target ε at blocklength n:
///   logM1 = (n/2)log(σ²/(λD1)) + √(nV)·Q⁻¹(ε) + c_log·log n
///   logM2 = −log Φ(n, λD1) + log log √n,
/// where Φ is h_lower for a spherical second layer and the strong
/// large-deviations form of the i.i.d. covering probability otherwise.
/// Requires n ≥ 8, ε ∈ (0, 1), λ ∈ (D2/D1, 1].
SecondOrderPlan second_order_plan(const SourceSpec& source, double D1, double D2, double lambda,
                                  double epsilon, std::int64_t n, double c_log = 0.0,
                                  CodebookKind kind2 = CodebookKind::spherical);

/// Second-order SEP coefficients (L1, L2) = √V·Q⁻¹(min{ε1, ε2}) twice.
std::pair<double, double> sep_second_order(const SourceSpec& source, double D1, double D2,
                                           double epsilon1, double epsilon2);

struct ModerateQuery {
    double theta1 = 1.0;
    double theta2 = 1.0;  ///< accepted for completeness; the constants do not depend on it
    double rho_exponent = 0.25;  ///< ρ_n = n^{−t}, t ∈ (0, ½)
};

struct ModerateConstants {
    double v_jep = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
};

/// All three constants equal θ1²/(2V). Throws DomainError when V = 0.
ModerateConstants moderate_constants(const SourceSpec& source, const ModerateQuery& mq);

struct ExponentResult {
    double lambda = 1.0;
    std::vector<std::pair<std::string, double>> auxiliaries;  ///< named roots
    double value = 0.0;
    bool positive = false;
    std::string case_tag;

    std::optional<double> aux(const std::string& name) const;
};

/// JEP exponent of the rate-adaptive scheme, Λ*(α*) with α* solving
/// R1 = R_iid(α, σ² − λD1, λD1). Requires R1 > 0.
ExponentResult jep_exponent(const SourceSpec& source, const RateQuery& q);

/// JEP exponent of the fixed λ = 1 scheme. Tags "i", "ii" or "iii".
ExponentResult jep_exponent_lambda1(const SourceSpec& source, const RateQuery& q);

struct SepExponents {
    ExponentResult e1;  ///< first decoder
    ExponentResult e2;  ///< second decoder
};

/// SEP exponents. The second decoder's exponent equals the JEP exponent when
/// R2 ≤ ½log(D1/D2); above that λ = 1 and the layer-2 radius γ* enters.
SepExponents sep_exponents(const SourceSpec& source, const RateQuery& q);

}  // namespace srgc
