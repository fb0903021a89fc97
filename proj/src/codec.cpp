#include "srgc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srgc/errors.hpp"

namespace srgc {

std::string to_string(CodebookKind kind)
{
    return kind == CodebookKind::spherical ? "spherical" : "iid";
}

CodebookKind parse_codebook_kind(const std::string& text)
{
    if (text == "spherical" || text == "sp") return CodebookKind::spherical;
    if (text == "iid") return CodebookKind::iid;
    throw ConfigError("unknown codebook kind '" + text + "' (expected spherical or iid)");
}

void SchemeConfig::validate() const
{
    std::ostringstream os;
    os.precision(12);
    if (n < 2) {
        os << "scheme requires blocklength n >= 2, got " << n;
        throw ConfigError(os.str());
    }
    if (M1 < 1 || M2 < 1) throw ConfigError("scheme requires code sizes M1, M2 >= 1");
    if (!(sigma2 > D1 && D1 > D2 && D2 > 0.0)) {
        os << "scheme requires σ² > D1 > D2 > 0, got σ²=" << sigma2 << ", D1=" << D1
           << ", D2=" << D2;
        throw ConfigError(os.str());
    }
    if (!(lambda > D2 / D1 && lambda <= 1.0)) {
        os << "scheme requires λ in (D2/D1, 1] = (" << D2 / D1 << ", 1], got λ=" << lambda;
        throw ConfigError(os.str());
    }
    if (!(P_Y() > 0.0)) {
        os << "scheme requires P_Y = σ² − λD1 > 0, got " << P_Y();
        throw ConfigError(os.str());
    }
}

void gen_codeword(CodebookKind kind, std::span<const double> center, double P, Rng& rng,
                  std::span<double> out)
{
    if (!(P > 0.0)) throw ConfigError("codeword power must be positive");
    const std::size_t n = out.size();
    if (kind == CodebookKind::iid) {
        const double sd = std::sqrt(P);
        for (std::size_t i = 0; i < n; ++i) out[i] = center[i] + sd * rng.normal();
        return;
    }
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = rng.normal();
            norm2 += out[i] * out[i];
        }
    } while (norm2 == 0.0);
    const double scale = std::sqrt(static_cast<double>(n) * P / norm2);
    for (std::size_t i = 0; i < n; ++i) out[i] = center[i] + scale * out[i];
}

void gen_codebook(CodebookKind kind, std::span<const double> center, double P, Rng& rng,
                  Codebook& book)
{
    for (std::size_t i = 0; i < book.size(); ++i) gen_codeword(kind, center, P, rng, book.row(i));
}

double distortion(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size()) {
        throw ConfigError("distortion: dimension mismatch " + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
    }
    long double acc = 0.0L;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double d = static_cast<long double>(x[i]) - y[i];
        acc += d * d;
    }
    return static_cast<double>(acc / static_cast<long double>(x.size()));
}

Encoding encode_layer(std::span<const double> x, const Codebook& book)
{
    if (book.size() == 0) throw ConfigError("encode_layer: empty codebook");
    if (book.dim() != x.size()) {
        throw ConfigError("encode_layer: codebook dimension " + std::to_string(book.dim()) +
                          " does not match sequence length " + std::to_string(x.size()));
    }
    Encoding best{0, distortion(x, book.row(0))};
    for (std::size_t i = 1; i < book.size(); ++i) {
        const double d = distortion(x, book.row(i));
        if (d < best.distortion) best = {i, d};
    }
    return best;
}

namespace {

// Scan M fresh codewords about `center`; leave the nearest one in `best`.
double nearest_fresh(CodebookKind kind, std::span<const double> x,
                     std::span<const double> center, double P, std::uint64_t M, Rng& rng,
                     std::vector<double>& scratch, std::vector<double>& best)
{
    double best_d = 0.0;
    for (std::uint64_t i = 0; i < M; ++i) {
        gen_codeword(kind, center, P, rng, scratch);
        const double d = distortion(x, scratch);
        if (i == 0 || d < best_d) {
            best_d = d;
            best.swap(scratch);
        }
    }
    return best_d;
}

}  // namespace

TrialOutcome run_trial(const SchemeConfig& config, const SourceSpec& source, Rng& rng)
{
    config.validate();
    const auto n = static_cast<std::size_t>(config.n);
    std::vector<double> x(n);
    sample(source, x, rng);

    const std::vector<double> origin(n, 0.0);
    std::vector<double> scratch(n);
    std::vector<double> y(n);
    std::vector<double> z(n);

    TrialOutcome out;
    out.d1 = nearest_fresh(config.kind1, x, origin, config.P_Y(), config.M1, rng, scratch, y);
    out.d2 = nearest_fresh(config.kind2, x, y, config.P_Z(), config.M2, rng, scratch, z);
    out.excess1 = out.d1 > config.D1;
    out.excess2 = out.d2 > config.D2;
    out.joint = out.excess1 || out.excess2;
    return out;
}

SuccessiveEncoding encode_successive(std::span<const double> x, const Codebook& layer1,
                                     std::span<const Codebook> banks)
{
    if (banks.size() != layer1.size()) {
        throw ConfigError("encode_successive: need one layer-2 bank per layer-1 codeword");
    }
    SuccessiveEncoding out;
    out.layer1 = encode_layer(x, layer1);
    out.layer2 = encode_layer(x, banks[out.layer1.index]);
    return out;
}

TrialOutcome run_trial_materialized(const SchemeConfig& config, const SourceSpec& source,
                                    Rng& rng)
{
    config.validate();
    const auto n = static_cast<std::size_t>(config.n);
    std::vector<double> x(n);
    sample(source, x, rng);

    const std::vector<double> origin(n, 0.0);
    Codebook layer1(config.M1, n);
    gen_codebook(config.kind1, origin, config.P_Y(), rng, layer1);
    std::vector<Codebook> banks;
    banks.reserve(config.M1);
    for (std::size_t i = 0; i < config.M1; ++i) {
        banks.emplace_back(config.M2, n);
        gen_codebook(config.kind2, layer1.row(i), config.P_Z(), rng, banks.back());
    }
    const SuccessiveEncoding enc = encode_successive(x, layer1, banks);

    TrialOutcome out;
    out.d1 = enc.layer1.distortion;
    out.d2 = enc.layer2.distortion;
    out.excess1 = out.d1 > config.D1;
    out.excess2 = out.d2 > config.D2;
    out.joint = out.excess1 || out.excess2;
    return out;
}

}  // namespace srgc
