#pragma once

// Two-layer successive-refinement code with random Gaussian codebooks and
// successive minimum-Euclidean-distance encoding.
//
// Layer 1 draws M1 codewords Y(i) ~ f_kind1(· | 0, P_Y) and picks the nearest
// one to the source sequence x. Layer 2 draws the bank of M2 codewords
// Z(i*, j) ~ f_kind2(· | Y(i*), P_Z) attached to the selected index and picks
// the nearest one again. Codebooks are fresh on every trial.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srgc/rng.hpp"
#include "srgc/sources.hpp"

namespace srgc {

enum class CodebookKind { spherical, iid };

std::string to_string(CodebookKind kind);
/// Accepts "spherical"/"sp" and "iid". Throws ConfigError otherwise.
CodebookKind parse_codebook_kind(const std::string& text);

struct SchemeConfig {
    std::int64_t n = 2;
    std::uint64_t M1 = 1;
    std::uint64_t M2 = 1;
    CodebookKind kind1 = CodebookKind::spherical;
    CodebookKind kind2 = CodebookKind::spherical;
    double sigma2 = 1.0;
    double D1 = 0.5;
    double D2 = 0.25;
    double lambda = 1.0;

    double P_Y() const noexcept { return sigma2 - lambda * D1; }
    double P_Z() const noexcept { return lambda * D1 - D2; }

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
};

struct TrialOutcome {
    double d1 = 0.0;
    double d2 = 0.0;
    bool excess1 = false;
    bool excess2 = false;
    bool joint = false;
};

/// Row-major M×n matrix of codewords.
class Codebook {
public:
    Codebook(std::size_t size, std::size_t dim) : dim_(dim), data_(size * dim, 0.0) {}

    std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }
    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * dim_, dim_}; }
    std::span<const double> row(std::size_t i) const noexcept
    {
        return {data_.data() + i * dim_, dim_};
    }

private:
    std::size_t dim_;
    std::vector<double> data_;
};

/// Draw one codeword from f_kind(· | center, P) into `out`. Spherical draws
/// are a normalized Gaussian direction scaled to radius √(n·P).
void gen_codeword(CodebookKind kind, std::span<const double> center, double P, Rng& rng,
                  std::span<double> out);

/// Fill every row of `book` from f_kind(· | center, P).
void gen_codebook(CodebookKind kind, std::span<const double> center, double P, Rng& rng,
                  Codebook& book);

/// Quadratic distortion (1/n)·‖x − y‖², accumulated in extended precision.
double distortion(std::span<const double> x, std::span<const double> y);

struct Encoding {
    std::size_t index;  ///< 0-based; lowest index wins ties
    double distortion;
};

/// Minimum-distance encoding against an explicit codebook.
Encoding encode_layer(std::span<const double> x, const Codebook& book);

struct SuccessiveEncoding {
    Encoding layer1;
    Encoding layer2;  ///< index within the bank attached to layer1.index
};

/// Successive encoding against fully materialized codebooks: `banks[i]` is
/// the layer-2 bank attached to layer-1 codeword i. Layer 2 searches only the
/// bank selected by layer 1.
SuccessiveEncoding encode_successive(std::span<const double> x, const Codebook& layer1,
                                     std::span<const Codebook> banks);

/// Reference realization that generates all M1 + M1·M2 codewords before
/// encoding. Same law as run_trial; used to validate the lazy bank.
TrialOutcome run_trial_materialized(const SchemeConfig& config, const SourceSpec& source,
                                    Rng& rng);

/// One realization of the full scheme: source sequence, layer-1 codebook,
/// the selected layer-2 bank. Codewords are generated and scanned one at a
/// time; only the running best is stored.
TrialOutcome run_trial(const SchemeConfig& config, const SourceSpec& source, Rng& rng);

}  // namespace srgc
