#include "srgc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "srgc/distance_law.hpp"
#include "srgc/errors.hpp"

namespace srgc {

std::string to_string(SimulationEngine engine)
{
    return engine == SimulationEngine::codebook ? "codebook" : "distance-law";
}

SimulationEngine parse_engine(const std::string& text)
{
    if (text == "codebook" || text == "explicit") return SimulationEngine::codebook;
    if (text == "distance-law" || text == "distance_law" || text == "law") {
        return SimulationEngine::distance_law;
    }
    throw ConfigError("unknown engine '" + text + "' (expected codebook or distance-law)");
}

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z)
{
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    const double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = k == n ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

namespace {

unsigned resolve_workers(unsigned workers)
{
    if (workers != 0) return workers;
    return std::max(1u, std::thread::hardware_concurrency());
}

// Run body(block) for blocks [0, blocks) on `workers` threads. Returns the
// number of leading blocks that completed; later blocks may be skipped once
// the deadline passes.
std::size_t run_blocks(std::size_t blocks, unsigned workers, double time_limit,
                       const std::function<void(std::size_t)>& body)
{
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    std::vector<char> done(blocks, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto work = [&] {
        while (!stop.load(std::memory_order_relaxed)) {
            const std::size_t b = next.fetch_add(1);
            if (b >= blocks) return;
            if (std::isfinite(time_limit)) {
                const std::chrono::duration<double> elapsed = clock::now() - start;
                if (elapsed.count() > time_limit) {
                    stop = true;
                    return;
                }
            }
            body(b);
            done[b] = 1;
        }
    };

    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(blocks, 1)));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    std::size_t prefix = 0;
    while (prefix < blocks && done[prefix]) ++prefix;
    return prefix;
}

struct SchemeBlock {
    std::uint64_t trials = 0;
    std::uint64_t jep = 0;
    std::uint64_t sep1 = 0;
    std::uint64_t sep2 = 0;
    double sum_d1 = 0.0;
    double sum_d2 = 0.0;
};

constexpr std::uint64_t kSchemeBlock = 64;
constexpr std::uint64_t kDrawBlock = 4096;

}  // namespace

EstimationResult estimate(const SchemeConfig& config, const SourceSpec& source,
                          const EstimateOptions& options)
{
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t total = options.trials;
    const std::size_t blocks = (total + kSchemeBlock - 1) / kSchemeBlock;
    std::vector<SchemeBlock> partial(blocks);

    auto body = [&](std::size_t b) {
        SchemeBlock acc;
        const std::uint64_t first = b * kSchemeBlock;
        const std::uint64_t last = std::min(total, first + kSchemeBlock);
        for (std::uint64_t i = first; i < last; ++i) {
            Rng rng = Rng::for_trial(options.seed, i);
            const TrialOutcome t = options.engine == SimulationEngine::codebook
                                       ? run_trial(config, source, rng)
                                       : law::run_trial_distance_law(config, source, rng);
            ++acc.trials;
            acc.jep += t.joint;
            acc.sep1 += t.excess1;
            acc.sep2 += t.excess2;
            acc.sum_d1 += t.d1;
            acc.sum_d2 += t.d2;
        }
        partial[b] = acc;
    };
    const std::size_t completed =
        run_blocks(blocks, resolve_workers(options.workers), options.time_limit_seconds, body);

    EstimationResult r;
    r.requested = total;
    r.seed = options.seed;
    double sum_d1 = 0.0;
    double sum_d2 = 0.0;
    for (std::size_t b = 0; b < completed; ++b) {
        r.trials += partial[b].trials;
        r.jep_count += partial[b].jep;
        r.sep1_count += partial[b].sep1;
        r.sep2_count += partial[b].sep2;
        sum_d1 += partial[b].sum_d1;
        sum_d2 += partial[b].sum_d2;
    }
    r.truncated = r.trials < total;
    if (std::max(r.sep1_count, r.sep2_count) > r.jep_count ||
        r.jep_count > r.sep1_count + r.sep2_count) {
        throw NumericError("excess-event counts violate max(sep) <= jep <= sep1 + sep2");
    }
    if (r.trials > 0) {
        const double nt = static_cast<double>(r.trials);
        r.jep_hat = static_cast<double>(r.jep_count) / nt;
        r.sep1_hat = static_cast<double>(r.sep1_count) / nt;
        r.sep2_hat = static_cast<double>(r.sep2_count) / nt;
        r.mean_d1 = sum_d1 / nt;
        r.mean_d2 = sum_d2 / nt;
    }
    r.jep_ci = wilson_interval(r.jep_count, r.trials);
    r.sep1_ci = wilson_interval(r.sep1_count, r.trials);
    r.sep2_ci = wilson_interval(r.sep2_count, r.trials);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    r.wall_time = elapsed.count();
    return r;
}

namespace {

ProbabilityEstimate estimate_non_excess(CodebookKind kind, std::span<const double> x,
                                        std::span<const double> center, double P, double D,
                                        std::uint64_t trials, std::uint64_t seed,
                                        unsigned workers)
{
    const std::size_t blocks = (trials + kDrawBlock - 1) / kDrawBlock;
    std::vector<std::uint64_t> hits(blocks, 0);
    const std::size_t n = x.size();
    auto body = [&](std::size_t b) {
        std::vector<double> u(n);
        Rng rng = Rng::for_trial(seed, b);
        const std::uint64_t count = std::min<std::uint64_t>(kDrawBlock, trials - b * kDrawBlock);
        std::uint64_t h = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            gen_codeword(kind, center, P, rng, u);
            h += distortion(x, u) <= D;
        }
        hits[b] = h;
    };
    run_blocks(blocks, resolve_workers(workers), std::numeric_limits<double>::infinity(), body);

    ProbabilityEstimate e;
    e.trials = trials;
    for (const auto h : hits) e.hits += h;
    if (trials > 0) {
        const double nt = static_cast<double>(trials);
        e.p = static_cast<double>(e.hits) / nt;
        e.std_error = std::sqrt(e.p * (1.0 - e.p) / nt);
    }
    e.ci = wilson_interval(e.hits, trials);
    return e;
}

void check_draw_args(std::int64_t n, double P)
{
    if (n < 1) throw ConfigError("blocklength must be positive");
    if (!(P > 0.0)) throw ConfigError("codeword power must be positive");
}

}  // namespace

ProbabilityEstimate estimate_psi(CodebookKind kind, std::int64_t n, double w, double P, double D,
                                 std::uint64_t trials, std::uint64_t seed, unsigned workers)
{
    check_draw_args(n, P);
    if (!(w >= 0.0)) throw ConfigError("source power w must be non-negative");
    const auto len = static_cast<std::size_t>(n);
    const std::vector<double> x(len, std::sqrt(w));
    const std::vector<double> origin(len, 0.0);
    return estimate_non_excess(kind, x, origin, P, D, trials, seed, workers);
}

ProbabilityEstimate estimate_phi(CodebookKind kind, std::int64_t n, double l, double P_Z,
                                 double D2, std::uint64_t trials, std::uint64_t seed,
                                 unsigned workers)
{
    check_draw_args(n, P_Z);
    if (!(l >= 0.0)) throw ConfigError("distance l must be non-negative");
    const auto len = static_cast<std::size_t>(n);
    const std::vector<double> x(len, 0.0);
    const std::vector<double> y(len, std::sqrt(l));
    return estimate_non_excess(kind, x, y, P_Z, D2, trials, seed, workers);
}

SlopeFit fit_exponent_slope(std::span<const double> n_values,
                            std::span<const ProbabilityEstimate> estimates,
                            double log_n_coefficient)
{
    if (n_values.size() != estimates.size()) {
        throw ConfigError("fit_exponent_slope: mismatched input sizes");
    }
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        const auto& e = estimates[i];
        if (e.hits == 0 || e.trials == 0) continue;
        const double var = (1.0 - e.p) / (static_cast<double>(e.trials) * e.p);
        const double wgt = var > 0.0 ? 1.0 / var : 1e300;
        const double x = n_values[i];
        const double y = -std::log(e.p) - log_n_coefficient * std::log(x);
        sw += wgt;
        swx += wgt * x;
        swy += wgt * y;
        swxx += wgt * x * x;
        swxy += wgt * x * y;
        ++used;
    }
    if (used < 2) throw NumericError("fit_exponent_slope needs two estimates with hits");
    const double det = sw * swxx - swx * swx;
    if (!(det > 0.0)) throw NumericError("fit_exponent_slope: degenerate design");
    SlopeFit f;
    f.slope = (sw * swxy - swx * swy) / det;
    f.intercept = (swxx * swy - swx * swxy) / det;
    f.slope_stderr = std::sqrt(sw / det);
    return f;
}

}  // namespace srgc
