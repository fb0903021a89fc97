#include "cli/commands.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "srgc/asymptotics.hpp"
#include "srgc/core_math.hpp"
#include "srgc/distance_law.hpp"
#include "srgc/errors.hpp"
#include "srgc/montecarlo.hpp"

namespace srgc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Setting {
    SourceSpec source;
    double sigma2 = 1.0;
    double D1 = 0.5;
    double D2 = 0.25;
};

Setting load_setting(const ConfigFile& cfg)
{
    Setting s{load_source(cfg)};
    s.sigma2 = moments(s.source).sigma2;
    s.D1 = cfg.number("distortion", "D1");
    s.D2 = cfg.number("distortion", "D2");
    RateQuery{0.0, 0.0, s.sigma2, s.D1, s.D2}.validate();
    return s;
}

RateQuery query(const Setting& s, double R1, double R2)
{
    return RateQuery{R1, R2, s.sigma2, s.D1, s.D2};
}

std::vector<double> positive_rates(const ConfigFile& cfg, const std::string& section,
                                   const std::string& key, bool strictly)
{
    auto v = cfg.axis(section, key);
    if (v.empty()) throw ConfigError(section + "." + key + ": empty grid");
    for (double r : v) {
        if (!(strictly ? r > 0.0 : r >= 0.0)) {
            throw ConfigError(section + "." + key + ": rates must be " +
                              (strictly ? "> 0" : ">= 0") + ", got " + format_number(r));
        }
    }
    return v;
}

std::vector<std::int64_t> blocklengths(const ConfigFile& cfg, const std::string& section)
{
    std::vector<std::int64_t> out;
    for (double v : cfg.numbers(section, "n")) {
        if (v != std::floor(v) || v < 2) {
            throw ConfigError(section + ".n: blocklengths must be integers >= 2");
        }
        out.push_back(static_cast<std::int64_t>(v));
    }
    if (out.empty()) throw ConfigError(section + ".n: empty simulation input");
    return out;
}

// One trial count per blocklength: a scalar or a list of the same length.
std::vector<std::uint64_t> trial_counts(const ConfigFile& cfg, const std::string& section,
                                        std::size_t points)
{
    const auto raw = cfg.numbers(section, "trials");
    if (raw.size() != 1 && raw.size() != points) {
        throw ConfigError(section + ".trials: mismatched grids (" + std::to_string(raw.size()) +
                          " trial counts for " + std::to_string(points) + " blocklengths)");
    }
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < points; ++i) {
        const double t = raw.size() == 1 ? raw[0] : raw[i];
        if (t < 1 || t != std::floor(t)) throw ConfigError(section + ".trials: must be integers >= 1");
        out.push_back(static_cast<std::uint64_t>(t));
    }
    return out;
}

std::uint64_t saturating_count(double log_m)
{
    if (log_m <= 0.0) return 1;
    const double m = std::floor(std::exp(log_m));
    if (!(m < 1.8446744073709552e19)) return std::numeric_limits<std::uint64_t>::max();
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
}

struct SchemePoint {
    SchemeConfig config;
    std::uint64_t trials = 0;
    double predicted_epsilon = kNaN;
    double predicted_exponent = kNaN;
};

struct SchemeSetup {
    std::vector<SchemePoint> points;
    EstimateOptions options;
};

// [scheme] n, kind1, kind2, sizing ∈ {second_order, rates, explicit} and the
// sizing's keys; [simulation] trials, seed, workers, engine, time_limit.
SchemeSetup load_scheme(const ConfigFile& cfg, const Setting& s, const RunOptions& opts)
{
    const auto ns = blocklengths(cfg, "scheme");
    const auto kind1 = parse_codebook_kind(cfg.text("scheme", "kind1", "spherical"));
    const auto kind2 = parse_codebook_kind(cfg.text("scheme", "kind2", "spherical"));
    const std::string sizing = cfg.text("scheme", "sizing", "second_order");
    const auto trials = trial_counts(cfg, "simulation", ns.size());

    SchemeSetup setup;
    setup.options.engine = parse_engine(cfg.text("simulation", "engine", "codebook"));
    setup.options.seed = opts.seed.value_or(cfg.count("simulation", "seed", 1));
    setup.options.workers = opts.workers.value_or(
        static_cast<unsigned>(cfg.count("simulation", "workers", 1)));
    setup.options.time_limit_seconds =
        cfg.number("simulation", "time_limit", std::numeric_limits<double>::infinity());

    for (std::size_t k = 0; k < ns.size(); ++k) {
        SchemePoint p;
        SchemeConfig& c = p.config;
        c.n = ns[k];
        c.kind1 = kind1;
        c.kind2 = kind2;
        c.sigma2 = s.sigma2;
        c.D1 = s.D1;
        c.D2 = s.D2;
        p.trials = trials[k];
        if (sizing == "explicit") {
            c.M1 = cfg.count("scheme", "M1");
            c.M2 = cfg.count("scheme", "M2");
            c.lambda = cfg.number("scheme", "lambda", 1.0);
        } else if (sizing == "rates") {
            const double R1 = cfg.number("scheme", "R1");
            const double R2 = cfg.number("scheme", "R2");
            const auto q = query(s, R1, R2);
            q.validate();
            const auto choice = lambda_for_rates(R2, s.D1, s.D2);
            if (choice.degenerate) throw ConfigError("scheme.R2: must be > 0 for simulation");
            c.lambda = choice.lambda;
            c.M1 = saturating_count(static_cast<double>(c.n) * R1);
            c.M2 = saturating_count(static_cast<double>(c.n) * R2);
            if (R1 > 0.0) p.predicted_exponent = jep_exponent(s.source, q).value;
        } else if (sizing == "second_order") {
            const double eps = cfg.number("scheme", "epsilon");
            const auto plan = second_order_plan(s.source, s.D1, s.D2, cfg.number("scheme", "lambda", 1.0),
                                                eps, c.n, cfg.number("scheme", "c_log", 0.0), kind2);
            c.lambda = plan.lambda;
            c.M1 = plan.M1;
            c.M2 = plan.M2;
            p.predicted_epsilon = eps;
        } else {
            throw ConfigError("scheme.sizing: unknown '" + sizing + "' (second_order, rates, explicit)");
        }
        c.validate();
        setup.points.push_back(p);
    }
    return setup;
}

void check_budget(double cost, double budget)
{
    if (cost > budget) {
        std::ostringstream msg;
        msg << "estimated cost " << format_number(cost) << " distance multiply-adds exceeds budget "
            << format_number(budget) << " (raise --budget or reduce trials/code sizes)";
        throw BudgetError(msg.str(), cost);
    }
}

double scheme_cost(const SchemeSetup& setup)
{
    double cost = 0.0;
    for (const auto& p : setup.points) {
        const double per_trial =
            setup.options.engine == SimulationEngine::codebook
                ? static_cast<double>(p.config.n) *
                      (static_cast<double>(p.config.M1) + static_cast<double>(p.config.M2))
                : static_cast<double>(p.config.n);
        cost += per_trial * static_cast<double>(p.trials);
    }
    return cost;
}

std::vector<EstimationResult> run_scheme(const SchemeSetup& setup, const SourceSpec& source)
{
    std::vector<EstimationResult> out;
    for (const auto& p : setup.points) {
        auto o = setup.options;
        o.trials = p.trials;
        out.push_back(estimate(p.config, source, o));
    }
    return out;
}

ProbabilityEstimate as_estimate(std::uint64_t hits, const EstimationResult& r)
{
    ProbabilityEstimate e;
    e.hits = hits;
    e.trials = r.trials;
    e.p = r.trials ? static_cast<double>(hits) / static_cast<double>(r.trials) : 0.0;
    e.std_error = r.trials ? std::sqrt(e.p * (1.0 - e.p) / static_cast<double>(r.trials)) : 0.0;
    e.ci = wilson_interval(hits, r.trials);
    return e;
}

Table fit_table(std::span<const double> ns, std::span<const ProbabilityEstimate> est, double c,
                double predicted)
{
    Table t{"fit", {"points", "log_n_coefficient", "slope", "slope_stderr", "intercept",
                    "predicted_slope", "relative_error"}, {}};
    SlopeFit f{kNaN, kNaN, kNaN};
    try {
        f = fit_exponent_slope(ns, est, c);
    } catch (const NumericError&) {
        // Fewer than two points with hits: nothing to fit.
    }
    const double rel = std::abs(f.slope - predicted) / predicted;
    t.add({static_cast<std::uint64_t>(ns.size()), c, f.slope, f.slope_stderr, f.intercept, predicted,
           rel});
    return t;
}

}  // namespace

Report cmd_asymptotics(const ConfigFile& cfg, const RunOptions&)
{
    const Setting s = load_setting(cfg);
    const auto R1s = positive_rates(cfg, "rates", "R1", true);
    const auto R2s = positive_rates(cfg, "rates", "R2", false);
    const auto n = static_cast<std::int64_t>(cfg.count("second_order", "n", 1000));
    const double eps = cfg.number("second_order", "epsilon", 0.1);
    const double c_log = cfg.number("second_order", "c_log", 0.0);
    const auto kind2 = parse_codebook_kind(cfg.text("second_order", "kind2", "spherical"));
    const double eps1 = cfg.number("second_order", "epsilon1", eps);
    const double eps2 = cfg.number("second_order", "epsilon2", eps);
    ModerateQuery mq;
    mq.theta1 = cfg.number("moderate", "theta1", mq.theta1);
    mq.theta2 = cfg.number("moderate", "theta2", mq.theta2);
    mq.rho_exponent = cfg.number("moderate", "rho_exponent", mq.rho_exponent);
    cfg.reject_unused();

    Report report{"asymptotics", {}};
    Table constants{"constants",
                    {"sigma2", "D1", "D2", "dispersion", "n", "epsilon1", "epsilon2", "sep_L1",
                     "sep_L2", "theta1", "rho_exponent", "moderate_v_jep", "moderate_v1",
                     "moderate_v2"},
                    {}};
    const auto L = sep_second_order(s.source, s.D1, s.D2, eps1, eps2);
    ModerateConstants mc{kNaN, kNaN, kNaN};
    try {
        mc = moderate_constants(s.source, mq);
    } catch (const DomainError&) {
        // V = 0: the moderate-deviations constants are undefined.
    }
    constants.add({s.sigma2, s.D1, s.D2, moments(s.source).dispersion, n, eps1, eps2, L.first,
                   L.second, mq.theta1, mq.rho_exponent, mc.v_jep, mc.v1, mc.v2});

    Table rows{"rates",
               {"R1", "R2", "region", "lambda", "alpha_star", "jep_exponent", "jep_lambda1",
                "lambda1_case", "sep_e1", "sep_e2", "sep_branch", "logM1", "logM2", "M1", "M2"},
               {}};
    for (double R1 : R1s) {
        for (double R2 : R2s) {
            const auto q = query(s, R1, R2);
            const auto region = region_contains(q);
            const auto jep = jep_exponent(s.source, q);
            const auto l1 = jep_exponent_lambda1(s.source, q);
            const auto sep = sep_exponents(s.source, q);
            const auto choice = lambda_for_rates(R2, s.D1, s.D2);
            double logM1 = kNaN, logM2 = kNaN;
            std::uint64_t M1 = 0, M2 = 0;
            if (!choice.degenerate) {
                const auto plan =
                    second_order_plan(s.source, s.D1, s.D2, choice.lambda, eps, n, c_log, kind2);
                logM1 = plan.logM1;
                logM2 = plan.logM2;
                M1 = plan.M1;
                M2 = plan.M2;
            }
            rows.add({R1, R2, to_string(region.status), jep.lambda, *jep.aux("alpha_star"),
                      jep.value, l1.value, l1.case_tag, sep.e1.value, sep.e2.value,
                      sep.e2.case_tag, logM1, logM2, M1, M2});
        }
    }
    report.tables.push_back(std::move(rows));
    report.tables.push_back(std::move(constants));
    return report;
}

Report cmd_exponent_grid(const ConfigFile& cfg, const RunOptions&)
{
    const Setting s = load_setting(cfg);
    const auto R1s = positive_rates(cfg, "grid", "R1", true);
    const auto R2s = positive_rates(cfg, "grid", "R2", false);
    cfg.reject_unused();

    const std::size_t n1 = R1s.size(), n2 = R2s.size();
    std::vector<double> jep(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            jep[i * n2 + j] = jep_exponent(s.source, query(s, R1s[i], R2s[j])).value;
        }
    }
    // A zero cell with a positive 4-neighbour lies on the zero-set edge.
    auto on_contour = [&](std::size_t i, std::size_t j) {
        if (jep[i * n2 + j] > 0.0) return false;
        if (i > 0 && jep[(i - 1) * n2 + j] > 0.0) return true;
        if (i + 1 < n1 && jep[(i + 1) * n2 + j] > 0.0) return true;
        if (j > 0 && jep[i * n2 + j - 1] > 0.0) return true;
        return j + 1 < n2 && jep[i * n2 + j + 1] > 0.0;
    };

    Table t{"grid",
            {"R1", "R2", "region", "lambda", "jep_exponent", "jep_lambda1", "sep_e1", "sep_e2",
             "contour"},
            {}};
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            const auto q = query(s, R1s[i], R2s[j]);
            const auto sep = sep_exponents(s.source, q);
            t.add({R1s[i], R2s[j], to_string(region_contains(q).status),
                   lambda_for_rates(R2s[j], s.D1, s.D2).lambda, jep[i * n2 + j],
                   jep_exponent_lambda1(s.source, q).value, sep.e1.value, sep.e2.value,
                   on_contour(i, j)});
        }
    }
    return Report{"exponent-grid", {std::move(t)}};
}

Report cmd_simulate(const ConfigFile& cfg, const RunOptions& opts)
{
    const Setting s = load_setting(cfg);
    const auto setup = load_scheme(cfg, s, opts);
    cfg.reject_unused();
    check_budget(scheme_cost(setup), opts.budget);

    const auto results = run_scheme(setup, s.source);
    Table t{"simulation",
            {"n", "kind1", "kind2", "engine", "lambda", "M1", "M2", "seed", "requested", "trials",
             "jep_count", "jep_hat", "jep_lo", "jep_hi", "sep1_count", "sep1_hat", "sep1_lo",
             "sep1_hi", "sep2_count", "sep2_hat", "sep2_lo", "sep2_hi", "mean_d1", "mean_d2",
             "truncated", "predicted_epsilon", "predicted_exponent"},
            {}};
    for (std::size_t k = 0; k < results.size(); ++k) {
        const auto& p = setup.points[k];
        const auto& r = results[k];
        t.add({p.config.n, to_string(p.config.kind1), to_string(p.config.kind2),
               to_string(setup.options.engine), p.config.lambda, p.config.M1, p.config.M2, r.seed,
               r.requested, r.trials, r.jep_count, r.jep_hat, r.jep_ci.lo, r.jep_ci.hi,
               r.sep1_count, r.sep1_hat, r.sep1_ci.lo, r.sep1_ci.hi, r.sep2_count, r.sep2_hat,
               r.sep2_ci.lo, r.sep2_ci.hi, r.mean_d1, r.mean_d2, r.truncated,
               p.predicted_epsilon, p.predicted_exponent});
    }
    return Report{"simulate", {std::move(t)}};
}

namespace {

Report compare_jep(const ConfigFile& cfg, const Setting& s, const RunOptions& opts)
{
    const auto setup = load_scheme(cfg, s, opts);
    cfg.reject_unused();
    check_budget(scheme_cost(setup), opts.budget);
    const auto results = run_scheme(setup, s.source);

    Table t{"points",
            {"n", "M1", "M2", "trials", "jep_count", "jep_hat", "jep_lo", "jep_hi", "prediction",
             "gap"},
            {}};
    std::vector<double> ns;
    std::vector<ProbabilityEstimate> est;
    for (std::size_t k = 0; k < results.size(); ++k) {
        const auto& p = setup.points[k];
        const auto& r = results[k];
        const double n = static_cast<double>(p.config.n);
        const double prediction = std::isnan(p.predicted_epsilon)
                                      ? std::exp(-n * p.predicted_exponent)
                                      : p.predicted_epsilon;
        t.add({p.config.n, p.config.M1, p.config.M2, r.trials, r.jep_count, r.jep_hat, r.jep_ci.lo,
               r.jep_ci.hi, prediction, std::abs(r.jep_hat - prediction)});
        ns.push_back(n);
        est.push_back(as_estimate(r.jep_count, r));
    }
    Report report{"compare", {std::move(t)}};
    report.tables.push_back(fit_table(ns, est, 0.0, setup.points.front().predicted_exponent));
    return report;
}

// mode = psi: [compare] w, P, D; mode = phi: [compare] l, P_Z, D2.
Report compare_covering(const ConfigFile& cfg, const std::string& mode, const RunOptions& opts)
{
    const auto kind = parse_codebook_kind(cfg.text("compare", "kind", "iid"));
    const auto ns = blocklengths(cfg, "compare");
    const auto trials = trial_counts(cfg, "compare", ns.size());
    const bool psi = mode == "psi";
    const double a = cfg.number("compare", psi ? "w" : "l");
    const double P = cfg.number("compare", psi ? "P" : "P_Z");
    const double D = cfg.number("compare", psi ? "D" : "D2");
    const double c = cfg.number("compare", "log_n_coefficient", 0.5);
    const std::uint64_t seed = opts.seed.value_or(cfg.count("compare", "seed", 1));
    const unsigned workers =
        opts.workers.value_or(static_cast<unsigned>(cfg.count("compare", "workers", 1)));
    cfg.reject_unused();
    if (!(a >= 0.0 && P > 0.0 && D > 0.0)) {
        throw ConfigError("compare: requires a non-negative source distortion and P, D > 0");
    }
    double cost = 0.0;
    for (std::size_t k = 0; k < ns.size(); ++k) cost += static_cast<double>(ns[k] * trials[k]);
    check_budget(cost, opts.budget);

    const bool iid = kind == CodebookKind::iid;
    double predicted_slope = iid ? math::r_iid(a, P, D) : math::r_sp(a, P, D);
    double log_pref = kNaN;
    if (iid && a > math::positive_part(D - P)) {
        log_pref = std::log(math::phi_iid_rate_and_prefactor(a, P, D).prefactor);
    }

    Table t{"points",
            {"n", "kind", "trials", "hits", "estimate", "lo", "hi", "exact", "prediction", "gap"},
            {}};
    std::vector<double> nv;
    std::vector<ProbabilityEstimate> est;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const auto e = psi ? estimate_psi(kind, ns[k], a, P, D, trials[k], seed, workers)
                           : estimate_phi(kind, ns[k], a, P, D, trials[k], seed, workers);
        const double n = static_cast<double>(ns[k]);
        const double prediction =
            std::exp(log_pref - n * predicted_slope - 0.5 * std::log(2.0 * std::numbers::pi * n));
        t.add({ns[k], to_string(kind), e.trials, e.hits, e.p, e.ci.lo, e.ci.hi,
               law::non_excess_probability(kind, ns[k], a, P, D), prediction, e.p - prediction});
        nv.push_back(n);
        est.push_back(e);
    }
    Report report{"compare", {std::move(t)}};
    report.tables.push_back(fit_table(nv, est, c, predicted_slope));
    return report;
}

}  // namespace

Report cmd_compare(const ConfigFile& cfg, const RunOptions& opts)
{
    const std::string mode = cfg.text("compare", "mode", "jep");
    if (mode == "psi" || mode == "phi") return compare_covering(cfg, mode, opts);
    if (mode != "jep") throw ConfigError("compare.mode: unknown '" + mode + "' (jep, psi, phi)");
    return compare_jep(cfg, load_setting(cfg), opts);
}

}  // namespace srgc::cli
