#include "srgc/asymptotics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "srgc/core_math.hpp"
#include "srgc/errors.hpp"
#include "srgc/rate_function.hpp"

namespace srgc {

namespace {

constexpr double kRegionTol = 1e-12;
// Exponents below this are indistinguishable from rounding in the root
// radii (a relative error δ in α gives Λ* ≈ δ²/4) and are reported as 0.
constexpr double kExponentFloor = 1e-13;

double source_sigma2(const SourceSpec& source) { return moments(source).sigma2; }

void check_source_matches(const SourceSpec& source, const RateQuery& q)
{
    const double s2 = source_sigma2(source);
    if (std::abs(s2 - q.sigma2) > 1e-12 * std::max(1.0, s2)) {
        std::ostringstream os;
        os.precision(12);
        os << "rate query σ²=" << q.sigma2 << " does not match source second moment " << s2;
        throw ConfigError(os.str());
    }
}

void require_positive_r1(const RateQuery& q)
{
    if (!(q.R1 > 0.0)) throw ConfigError("exponent calculators require R1 > 0");
}

// Root of r_iid(·, P, D) = target on w >= 0. When P > D and the target does
// not exceed r_iid(0, P, D), no source power is covered and the radius is 0.
double radius_for_rate(double target, double P, double D)
{
    if (P > D && target <= math::r_iid(0.0, P, D)) return 0.0;
    return math::invert_r_iid(target, P, D);
}

void finish(ExponentResult& r)
{
    if (!(r.value >= kExponentFloor)) r.value = 0.0;
    r.positive = r.value > 0.0;
}

}  // namespace

void RateQuery::validate() const
{
    std::ostringstream os;
    os.precision(12);
    if (!(R1 >= 0.0 && R2 >= 0.0) || !std::isfinite(R1) || !std::isfinite(R2)) {
        os << "rate query requires finite R1, R2 >= 0, got (" << R1 << ", " << R2 << ")";
        throw ConfigError(os.str());
    }
    if (!(sigma2 > D1 && D1 > D2 && D2 > 0.0)) {
        os << "rate query requires σ² > D1 > D2 > 0, got σ²=" << sigma2 << ", D1=" << D1
           << ", D2=" << D2;
        throw ConfigError(os.str());
    }
}

std::string to_string(RegionStatus status)
{
    switch (status) {
    case RegionStatus::inside: return "inside";
    case RegionStatus::boundary: return "boundary";
    case RegionStatus::outside: return "outside";
    }
    return "outside";
}

RegionResult region_contains(const RateQuery& q)
{
    q.validate();
    const double c1 = q.R1 - 0.5 * std::log(q.sigma2 / q.D1);
    const double c2 = q.R1 + q.R2 - 0.5 * std::log(q.sigma2 / q.D2);
    RegionResult r;
    if (c1 < -kRegionTol || c2 < -kRegionTol) return r;
    const bool on_edge = std::abs(c1) <= kRegionTol || std::abs(c2) <= kRegionTol;
    r.status = on_edge ? RegionStatus::boundary : RegionStatus::inside;
    r.witness_eta = lambda_for_rates(q.R2, q.D1, q.D2).lambda;
    return r;
}

LambdaChoice lambda_for_rates(double R2, double D1, double D2)
{
    if (!(R2 >= 0.0)) throw ConfigError("lambda_for_rates requires R2 >= 0");
    if (!(D1 > D2 && D2 > 0.0)) throw ConfigError("lambda_for_rates requires D1 > D2 > 0");
    LambdaChoice c;
    c.lambda = std::min(D2 * std::exp(2.0 * R2) / D1, 1.0);
    c.degenerate = R2 == 0.0;
    return c;
}

SecondOrderPlan second_order_plan(const SourceSpec& source, double D1, double D2, double lambda,
                                  double epsilon, std::int64_t n, double c_log,
                                  CodebookKind kind2)
{
    const Moments m = moments(source);
    std::ostringstream os;
    os.precision(12);
    if (!(m.sigma2 > D1 && D1 > D2 && D2 > 0.0)) {
        os << "second_order_plan requires σ² > D1 > D2 > 0, got σ²=" << m.sigma2
           << ", D1=" << D1 << ", D2=" << D2;
        throw ConfigError(os.str());
    }
    if (!(lambda > D2 / D1 && lambda <= 1.0)) {
        os << "second_order_plan requires λ in (D2/D1, 1], got " << lambda;
        throw ConfigError(os.str());
    }
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("second_order_plan requires ε in (0,1)");
    if (n < 8) throw ConfigError("second_order_plan requires n >= 8");

    const double nd = static_cast<double>(n);
    const double lD1 = lambda * D1;
    const double P_Z = lD1 - D2;

    SecondOrderPlan p;
    p.n = n;
    p.lambda = lambda;
    p.epsilon = epsilon;
    p.c_log = c_log;
    p.logM1 = 0.5 * nd * std::log(m.sigma2 / lD1) + std::sqrt(nd * m.dispersion) * math::q_inv(epsilon) +
              c_log * std::log(nd);
    const double loglog = std::log(std::log(std::sqrt(nd)));
    if (kind2 == CodebookKind::spherical) {
        p.logM2 = -math::log_h_lower(n, lD1, P_Z, D2) + loglog;
    } else {
        const auto rp = math::phi_iid_rate_and_prefactor(lD1, P_Z, D2);
        p.logM2 = nd * rp.rate - std::log(rp.prefactor) + 0.5 * std::log(2.0 * std::numbers::pi * nd) + loglog;
    }
    if (!std::isfinite(p.logM2)) throw NumericError("second_order_plan: layer-2 covering probability is zero");

    auto to_size = [](double logM) -> std::uint64_t {
        if (logM <= 0.0) return 1;
        const double M = std::ceil(std::exp(logM));
        if (!(M < 1.8446744073709552e19)) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(M);
    };
    p.M1 = to_size(p.logM1);
    p.M2 = to_size(p.logM2);
    p.case_label = lambda < 1.0 ? "i" : "iii";
    return p;
}

std::pair<double, double> sep_second_order(const SourceSpec& source, double D1, double D2,
                                           double epsilon1, double epsilon2)
{
    const Moments m = moments(source);
    if (!(m.sigma2 > D1 && D1 > D2 && D2 > 0.0)) {
        throw ConfigError("sep_second_order requires σ² > D1 > D2 > 0");
    }
    if (!(epsilon1 > 0.0 && epsilon1 < 1.0 && epsilon2 > 0.0 && epsilon2 < 1.0)) {
        throw ConfigError("sep_second_order requires ε1, ε2 in (0,1)");
    }
    const double L = std::sqrt(m.dispersion) * math::q_inv(std::min(epsilon1, epsilon2));
    return {L, L};
}

ModerateConstants moderate_constants(const SourceSpec& source, const ModerateQuery& mq)
{
    if (!(mq.rho_exponent > 0.0 && mq.rho_exponent < 0.5)) {
        throw ConfigError("moderate deviations require ρ exponent t in (0, 1/2)");
    }
    if (!(mq.theta1 >= 0.0) || !std::isfinite(mq.theta1)) {
        throw ConfigError("moderate deviations require a finite θ1 >= 0");
    }
    const double V = moments(source).dispersion;
    if (!(V > 0.0)) throw DomainError("moderate deviations constants need positive dispersion V");
    const double v = mq.theta1 * mq.theta1 / (2.0 * V);
    return {v, v, v};
}

std::optional<double> ExponentResult::aux(const std::string& name) const
{
    for (const auto& [key, val] : auxiliaries) {
        if (key == name) return val;
    }
    return std::nullopt;
}

ExponentResult jep_exponent(const SourceSpec& source, const RateQuery& q)
{
    q.validate();
    check_source_matches(source, q);
    require_positive_r1(q);
    ExponentResult r;
    r.lambda = lambda_for_rates(q.R2, q.D1, q.D2).lambda;
    const double P_Y = q.sigma2 - r.lambda * q.D1;
    if (!(P_Y > 0.0)) throw ConfigError("jep_exponent requires P_Y = σ² − λD1 > 0");
    const double alpha = radius_for_rate(q.R1, P_Y, r.lambda * q.D1);
    r.auxiliaries.emplace_back("alpha_star", alpha);
    r.value = math::rate_function_x2(source, alpha);
    r.case_tag = r.lambda < 1.0 ? "adaptive" : "lambda=1";
    finish(r);
    return r;
}

ExponentResult jep_exponent_lambda1(const SourceSpec& source, const RateQuery& q)
{
    q.validate();
    check_source_matches(source, q);
    ExponentResult r;
    r.lambda = 1.0;
    const double P_Y = q.sigma2 - q.D1;
    const double P_Z = q.D1 - q.D2;
    const double r1_edge = 0.5 * std::log(q.sigma2 / q.D1);
    const double r2_edge = 0.5 * std::log(q.D1 / q.D2);

    const double r2_floor = math::r_iid(math::positive_part(q.D2 - P_Z), P_Z, q.D2);
    if (!(r2_floor < r2_edge)) {
        throw NumericError("λ=1 scheme: R_iid(|D2−P_Z|^+, P_Z, D2) >= ½log(D1/D2)");
    }

    if (q.R1 >= r1_edge && q.R2 > r2_edge && q.R1 > 0.0) {
        const double a1 = radius_for_rate(q.R1, P_Y, q.D1);
        r.auxiliaries.emplace_back("alpha1", a1);
        r.value = math::rate_function_x2(source, a1);
        r.case_tag = "i";
        finish(r);
        return r;
    }
    if (q.R2 < r2_edge && q.R2 > r2_floor) {
        const double g2 = radius_for_rate(q.R2, P_Z, q.D2);
        const double r1_threshold = math::r_iid(std::max(q.sigma2, g2 - P_Y), P_Y, g2);
        if (!(r1_threshold > r1_edge)) {
            std::ostringstream os;
            os.precision(12);
            os << "λ=1 scheme: case-ii threshold " << r1_threshold << " not above ½log(σ²/D1) = "
               << r1_edge << " (γ2=" << g2 << ")";
            throw NumericError(os.str());
        }
        if (q.R1 > r1_threshold) {
            const double a2 = radius_for_rate(q.R1, P_Y, g2);
            r.auxiliaries.emplace_back("gamma2", g2);
            r.auxiliaries.emplace_back("alpha2", a2);
            r.value = math::rate_function_x2(source, a2);
            r.case_tag = "ii";
            finish(r);
            return r;
        }
    }
    r.value = 0.0;
    r.case_tag = "iii";
    finish(r);
    return r;
}

SepExponents sep_exponents(const SourceSpec& source, const RateQuery& q)
{
    q.validate();
    check_source_matches(source, q);
    require_positive_r1(q);
    const double r2_edge = 0.5 * std::log(q.D1 / q.D2);

    SepExponents out;
    if (q.R2 <= r2_edge) {
        out.e2 = jep_exponent(source, q);
        out.e2.case_tag = "R2<=edge";
    } else {
        ExponentResult& e2 = out.e2;
        e2.lambda = 1.0;
        const double P_Y = q.sigma2 - q.D1;
        const double P_Z = q.D1 - q.D2;
        const double g = radius_for_rate(q.R2, P_Z, q.D2);
        const double a2 = radius_for_rate(q.R1, P_Y, g);
        e2.auxiliaries.emplace_back("gamma_star", g);
        e2.auxiliaries.emplace_back("alpha2", a2);
        e2.value = math::rate_function_x2(source, a2);
        e2.case_tag = "R2>edge";
        finish(e2);
    }

    ExponentResult& e1 = out.e1;
    e1.lambda = out.e2.lambda;
    const double P_Y = q.sigma2 - e1.lambda * q.D1;
    const double a1 = radius_for_rate(q.R1, P_Y, q.D1);
    e1.auxiliaries.emplace_back("alpha1_star", a1);
    e1.value = math::rate_function_x2(source, a1);
    e1.case_tag = out.e2.case_tag;
    finish(e1);
    return out;
}

}  // namespace srgc
