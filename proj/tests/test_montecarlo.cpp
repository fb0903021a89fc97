#include <cmath>

#include "doctest.h"
#include "srgc/core_math.hpp"
#include "srgc/errors.hpp"
#include "srgc/montecarlo.hpp"
#include "support/property.hpp"

using namespace srgc;
using doctest::Approx;

namespace {

// Wilson bounds as the roots of |k/n − p| = z·√(p(1−p)/n), by bisection.
Interval wilson_by_bisection(std::uint64_t k, std::uint64_t n, double z)
{
    const double phat = static_cast<double>(k) / n;
    auto g = [&](double p) { return std::abs(phat - p) - z * std::sqrt(p * (1 - p) / n); };
    auto root = [&](double lo, double hi) {
        // g changes sign between lo (inside, g ≤ 0) and hi (outside, g > 0).
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (g(mid) <= 0.0) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double lo = k == 0 ? 0.0 : root(phat, 0.0);
    const double hi = k == n ? 1.0 : root(phat, 1.0);
    return {lo, hi};
}

SchemeConfig config(std::int64_t n, std::uint64_t M1, std::uint64_t M2)
{
    SchemeConfig c;
    c.n = n;
    c.M1 = M1;
    c.M2 = M2;
    c.sigma2 = 1.0;
    c.D1 = 0.6;
    c.D2 = 0.4;
    c.lambda = 1.0;
    return c;
}

bool same(const EstimationResult& a, const EstimationResult& b)
{
    return a.trials == b.trials && a.jep_count == b.jep_count && a.sep1_count == b.sep1_count &&
           a.sep2_count == b.sep2_count && a.mean_d1 == b.mean_d1 && a.mean_d2 == b.mean_d2 &&
           a.jep_ci.lo == b.jep_ci.lo && a.jep_ci.hi == b.jep_ci.hi && a.truncated == b.truncated;
}

}  // namespace

TEST_CASE("Wilson interval")
{
    const double z = 1.959963984540054;
    const auto zero = wilson_interval(0, 10);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi == Approx(z * z / (10 + z * z)).epsilon(1e-14));
    for (auto [k, n] : {std::pair<std::uint64_t, std::uint64_t>{3, 10}, {50, 100}, {1, 100000}, {99, 100}}) {
        const auto w = wilson_interval(k, n);
        const auto o = wilson_by_bisection(k, n, z);
        CHECK(w.lo == Approx(o.lo).epsilon(1e-10));
        CHECK(w.hi == Approx(o.hi).epsilon(1e-10));
    }
    const auto all = wilson_interval(10, 10);
    CHECK(all.hi == 1.0);
}

TEST_CASE("estimate is independent of the worker count")
{
    const auto src = SourceSpec::gaussian(1.0);
    auto c = config(8, 20, 10);
    c.kind2 = CodebookKind::iid;
    EstimateOptions o;
    o.trials = 3001;
    o.seed = 42;
    o.workers = 1;
    const auto r1 = estimate(c, src, o);
    o.workers = 8;
    const auto r8 = estimate(c, src, o);
    o.workers = 3;
    const auto r3 = estimate(c, src, o);
    CHECK(same(r1, r8));
    CHECK(same(r1, r3));
    CHECK(r1.trials == 3001);
    CHECK_FALSE(r1.truncated);

    o.engine = SimulationEngine::distance_law;
    o.workers = 1;
    const auto d1 = estimate(c, src, o);
    o.workers = 4;
    CHECK(same(d1, estimate(c, src, o)));
}

TEST_CASE("counting identity on random configurations")
{
    prop::for_all(25, 81, [](prop::Gen& g) {
        SchemeConfig c;
        c.n = g.integer(2, 12);
        c.M1 = g.integer(1, 30);
        c.M2 = g.integer(1, 30);
        c.kind1 = g.integer(0, 1) ? CodebookKind::iid : CodebookKind::spherical;
        c.kind2 = g.integer(0, 1) ? CodebookKind::iid : CodebookKind::spherical;
        c.sigma2 = 1.0;
        c.D1 = g.uniform(0.2, 0.95);
        c.D2 = c.D1 * g.uniform(0.1, 0.9);
        c.lambda = c.D2 / c.D1 + (1.0 - c.D2 / c.D1) * g.uniform(0.05, 1.0);
        EstimateOptions o;
        o.trials = 500;
        o.seed = g.bits();
        const auto r = estimate(c, SourceSpec::gaussian(1.0), o);
        CHECK(std::max(r.sep1_count, r.sep2_count) <= r.jep_count);
        CHECK(r.jep_count <= r.sep1_count + r.sep2_count);
        CHECK(r.jep_ci.lo <= r.jep_hat);
        CHECK(r.jep_hat <= r.jep_ci.hi);
    });
}

TEST_CASE("single-codeword scheme agrees with a long reference run")
{
    const auto src = SourceSpec::gaussian(1.0);
    const auto c = config(2, 1, 1);
    EstimateOptions ref;
    ref.trials = 10000000;
    ref.seed = 1;
    const auto big = estimate(c, src, ref);
    EstimateOptions o;
    o.trials = 100000;
    o.seed = 2;
    const auto small = estimate(c, src, o);
    CHECK(small.jep_ci.lo <= big.jep_hat);
    CHECK(big.jep_hat <= small.jep_ci.hi);
}

TEST_CASE("time limit yields a flagged partial result")
{
    const auto src = SourceSpec::gaussian(1.0);
    EstimateOptions o;
    o.trials = 100000;
    o.time_limit_seconds = 0.0;
    const auto r = estimate(config(16, 200, 200), src, o);
    CHECK(r.truncated);
    CHECK(r.trials < r.requested);
    CHECK(r.requested == 100000);
}

TEST_CASE("invalid configurations are rejected before running")
{
    auto c = config(4, 2, 2);
    c.D1 = 1.0;  // σ² > D1 violated
    EstimateOptions o;
    CHECK_THROWS_AS(estimate(c, SourceSpec::gaussian(1.0), o), ConfigError);
}

TEST_CASE("psi and phi frequency estimators")
{
    SUBCASE("trivial spherical cases")
    {
        const double w = 1.0, P = 0.5;
        const double far = std::pow(std::sqrt(w) + std::sqrt(P), 2);
        const double near = std::pow(std::sqrt(w) - std::sqrt(P), 2);
        CHECK(estimate_psi(CodebookKind::spherical, 10, w, P, far, 2000, 1).p == 1.0);
        CHECK(estimate_psi(CodebookKind::spherical, 10, w, P, 0.9 * near, 2000, 1).p == 0.0);
        // √l above β2 = √P_Z + √D2 = 1.
        CHECK(estimate_phi(CodebookKind::spherical, 10, 1.2, 0.25, 0.25, 2000, 1).p == 0.0);
        // √l below β1 = √P_Z − √D2 > 0.
        CHECK(estimate_phi(CodebookKind::spherical, 10, 0.01, 0.36, 0.09, 2000, 1).p == 0.0);
    }
    SUBCASE("cap lower bound on an l grid")
    {
        for (double l : {0.2, 0.35, 0.5, 0.65, 0.8}) {
            const auto e = estimate_phi(CodebookKind::spherical, 10, l, 0.25, 0.25, 100000, 7);
            CAPTURE(l);
            CHECK(e.p >= math::h_lower(10, l, 0.25, 0.25) - 3.0 * e.std_error);
        }
    }
    SUBCASE("worker-count invariance")
    {
        const auto a = estimate_psi(CodebookKind::iid, 12, 1.0, 0.5, 0.6, 50000, 3, 1);
        const auto b = estimate_psi(CodebookKind::iid, 12, 1.0, 0.5, 0.6, 50000, 3, 8);
        CHECK(a.hits == b.hits);
        CHECK(a.trials == 50000);
    }
}

TEST_CASE("exponent slope fit")
{
    const double ns[] = {10.0, 20.0, 30.0, 40.0};
    std::vector<ProbabilityEstimate> est;
    for (double n : ns) {
        ProbabilityEstimate e;
        e.trials = 1000000000000ULL;
        e.p = 0.7 * std::pow(n, -0.5) * std::exp(-0.3 * n);
        e.hits = static_cast<std::uint64_t>(e.p * e.trials);
        est.push_back(e);
    }
    const auto f = fit_exponent_slope(ns, est, 0.5);
    CHECK(f.slope == Approx(0.3).epsilon(1e-9));
    CHECK(f.intercept == Approx(-std::log(0.7)).epsilon(1e-9));
    CHECK(f.slope_stderr > 0.0);

    std::vector<ProbabilityEstimate> one(est.begin(), est.begin() + 1);
    CHECK_THROWS_AS(fit_exponent_slope(std::span<const double>(ns, 1), one, 0.0), NumericError);
}
