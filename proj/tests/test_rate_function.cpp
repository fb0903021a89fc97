#include <cmath>
#include <limits>

#include "doctest.h"
#include "srgc/errors.hpp"
#include "srgc/rate_function.hpp"
#include "support/property.hpp"

using namespace srgc;
using namespace srgc::math;
using doctest::Approx;

namespace {

double gms_closed_form(double sigma2, double t)
{
    const double r = t / sigma2;
    return 0.5 * (r - std::log(r) - 1.0);
}

// Uniform CGF by a composite Simpson rule on a fine mesh.
double uniform_cgf_simpson(double a, double theta)
{
    const int m = 20000;
    const double h = 1.0 / m;
    double acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double u = i * h;
        const double w = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        acc += w * std::exp(theta * a * a * u * u);
    }
    return std::log(acc * h / 3.0);
}

}  // namespace

TEST_CASE("cgf closed forms and domains")
{
    const auto g = SourceSpec::gaussian(1.0);
    CHECK(cgf_theta_max(g) == 0.5);
    CHECK(cgf_x2(g, 0.0) == 0.0);
    CHECK(cgf_x2(g, 0.25) == Approx(-0.5 * std::log(0.5)).epsilon(1e-15));
    CHECK_THROWS_AS(cgf_x2(g, 0.5), DomainError);
    CHECK_THROWS_AS(cgf_x2(g, 0.7), DomainError);

    const auto u = SourceSpec::uniform(1.3);
    for (double th : {-2.0, 0.3, 1.0, 5.0, 40.0}) {
        CAPTURE(th);
        CHECK(cgf_x2(u, th) == Approx(uniform_cgf_simpson(1.3, th)).epsilon(1e-10));
    }

    const auto l = SourceSpec::laplace(1.0);
    CHECK(cgf_theta_max(l) == 0.0);
    CHECK_THROWS_AS(cgf_x2(l, 1e-6), DomainError);
    CHECK(cgf_x2(l, 0.0) == 0.0);

    const auto d = SourceSpec::discrete({-2.0, 1.0}, {0.25, 0.75});
    CHECK(cgf_x2(d, 0.4) == Approx(std::log(0.25 * std::exp(1.6) + 0.75 * std::exp(0.4))).epsilon(1e-14));
    // Large θ: log-sum-exp keeps it finite.
    CHECK(cgf_x2(d, 1000.0) == Approx(4000.0 + std::log(0.25 + 0.75 * std::exp(-3000.0))).epsilon(1e-14));
}

TEST_CASE("rate function examples")
{
    const auto g = SourceSpec::gaussian(1.0);
    CHECK(rate_function_x2(g, 1.0) == 0.0);
    CHECK(rate_function_x2(g, 0.3) == 0.0);
    CHECK(rate_function_x2(g, 2.0) == Approx(0.5 * (2.0 - std::log(2.0) - 1.0)).epsilon(1e-9));
    CHECK(rate_function_x2(g, 2.0) == Approx(0.15343).epsilon(1e-4));
    CHECK_THROWS_AS(rate_function_x2(g, -1.0), DomainError);

    const auto rad = SourceSpec::two_point(1.0);
    CHECK(rate_function_x2(rad, 0.5) == 0.0);
    CHECK(rate_function_x2(rad, 1.0) == 0.0);
    CHECK(std::isinf(rate_function_x2(rad, 1.0 + 1e-9)));

    // Laplace: Λ is infinite for θ > 0, the supremum sits at θ = 0.
    CHECK(rate_function_x2(SourceSpec::laplace(1.0), 50.0) == 0.0);

    // Discrete: exactly at the top of the support, −log P(X² = max).
    const auto d = SourceSpec::discrete({-2.0, 1.0, 2.0}, {0.1, 0.7, 0.2});
    CHECK(rate_function_x2(d, 4.0) == Approx(-std::log(0.3)).epsilon(1e-14));
    CHECK(std::isinf(rate_function_x2(d, 4.0001)));
}

TEST_CASE("GMS optimizer matches the closed form")
{
    for (double sigma2 : {1.0, 0.37, 4.0}) {
        const auto g = SourceSpec::gaussian(sigma2);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double t = sigma2 * (1.0 + 9.0 * i / 99.0);
            worst = std::max(worst, std::abs(rate_function_x2(g, t) - gms_closed_form(sigma2, t)));
        }
        CAPTURE(sigma2);
        CHECK(worst <= 1e-6);
    }
}

TEST_CASE("uniform rate function against a grid Legendre transform")
{
    const double a = 1.0;
    const auto u = SourceSpec::uniform(a);
    for (double t : {0.4, 0.6, 0.8, 0.95}) {
        double best = 0.0;
        for (int i = 0; i <= 4000; ++i) {
            const double th = 0.05 * i;
            best = std::max(best, th * t - uniform_cgf_simpson(a, th));
        }
        CAPTURE(t);
        CHECK(rate_function_x2(u, t) == Approx(best).epsilon(1e-4));
        CHECK(rate_function_x2(u, t) >= best - 1e-9);
    }
    CHECK(std::isinf(rate_function_x2(u, 1.01)));
}

TEST_CASE("rate function properties")
{
    const SourceSpec sources[] = {SourceSpec::gaussian(1.0), SourceSpec::uniform(1.7),
                                  SourceSpec::discrete({-1.5, 0.2, 1.0}, {0.3, 0.3, 0.4})};
    for (const auto& s : sources) {
        CAPTURE(s.describe());
        const double s2 = moments(s).sigma2;
        const double top = std::min(ess_sup_x2(s), 6.0 * s2);
        prop::for_all(60, 51, [&](prop::Gen& g) {
            const double t1 = g.uniform(0.0, top * 0.999);
            const double t2 = g.uniform(0.0, top * 0.999);
            const double f1 = rate_function_x2(s, t1);
            const double f2 = rate_function_x2(s, t2);
            const double fm = rate_function_x2(s, 0.5 * (t1 + t2));
            CHECK(fm <= 0.5 * (f1 + f2) + 1e-9);  // convexity
            CHECK(f1 >= 0.0);
            if (t1 > s2 * (1.0 + 1e-6)) CHECK(f1 > 0.0);
            if (t1 <= s2) CHECK(f1 == 0.0);
            // Nondecreasing above the mean.
            if (t1 > s2 && t2 > t1) CHECK(f2 >= f1 - 1e-12);
        });
    }
}
