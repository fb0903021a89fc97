#pragma once

// Ensemble excess-distortion probabilities by plain Monte Carlo.
//
// Trials are grouped into fixed-size blocks; trial i always uses
// Rng::for_trial(seed, i), and block results are reduced in block order, so
// every reported number is independent of the worker count.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "srgc/codec.hpp"
#include "srgc/sources.hpp"

namespace srgc {

enum class SimulationEngine {
    codebook,      ///< explicit codewords (run_trial)
    distance_law,  ///< inversion of the exact minimum-distortion laws
};

std::string to_string(SimulationEngine engine);
SimulationEngine parse_engine(const std::string& text);

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// 95% Wilson score interval for k successes out of n.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

struct EstimationResult {
    std::uint64_t requested = 0;
    std::uint64_t trials = 0;  ///< completed trials (< requested only if truncated)
    std::uint64_t jep_count = 0;
    std::uint64_t sep1_count = 0;
    std::uint64_t sep2_count = 0;
    double jep_hat = 0.0;
    double sep1_hat = 0.0;
    double sep2_hat = 0.0;
    Interval jep_ci;
    Interval sep1_ci;
    Interval sep2_ci;
    double mean_d1 = 0.0;
    double mean_d2 = 0.0;
    std::uint64_t seed = 0;
    double wall_time = 0.0;
    bool truncated = false;
};

struct EstimateOptions {
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    unsigned workers = 1;  ///< 0 = hardware concurrency
    SimulationEngine engine = SimulationEngine::codebook;
    /// Wall-clock limit. When exceeded, the result covers the longest
    /// completed prefix of trial blocks and is flagged `truncated`.
    double time_limit_seconds = std::numeric_limits<double>::infinity();
};

EstimationResult estimate(const SchemeConfig& config, const SourceSpec& source,
                          const EstimateOptions& options);

struct ProbabilityEstimate {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    double p = 0.0;
    double std_error = 0.0;
    Interval ci;
};

/// Frequency of d(x, Y) ≤ D for fresh Y ~ f_kind(· | 0, P), where x is a
/// fixed sequence with ‖x‖² = n·w.
ProbabilityEstimate estimate_psi(CodebookKind kind, std::int64_t n, double w, double P, double D,
                                 std::uint64_t trials, std::uint64_t seed, unsigned workers = 1);

/// Frequency of d(x, Z) ≤ D2 for fresh Z ~ f_kind(· | y, P_Z), where
/// d(x, y) = l.
ProbabilityEstimate estimate_phi(CodebookKind kind, std::int64_t n, double l, double P_Z,
                                 double D2, std::uint64_t trials, std::uint64_t seed,
                                 unsigned workers = 1);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

/// Weighted least-squares fit of −log p̂(n) − c·log n = slope·n + intercept,
/// with weights from the delta-method variance (1 − p)/(N·p). `c` removes a
/// known polynomial prefactor n^{−c}. Needs at least two points with hits.
SlopeFit fit_exponent_slope(std::span<const double> n_values,
                            std::span<const ProbabilityEstimate> estimates,
                            double log_n_coefficient = 0.0);

}  // namespace srgc
