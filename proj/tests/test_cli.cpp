#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "cli/commands.hpp"
#include "doctest.h"
#include "srgc/core_math.hpp"
#include "srgc/errors.hpp"

using namespace srgc;
using namespace srgc::cli;

namespace {

ConfigFile cfg_from(const std::string& text)
{
    std::istringstream in(text);
    return ConfigFile::parse(in);
}

std::string csv(const Report& r)
{
    std::ostringstream out;
    write_csv(out, r);
    return out.str();
}

std::string json(const Report& r)
{
    std::ostringstream out;
    write_json(out, r);
    return out.str();
}

const std::string kGms =
    "[source]\nfamily = gaussian\nvariance = 1\n[distortion]\nD1 = 0.5\nD2 = 0.25\n";

std::size_t column(const Table& t, const std::string& name)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        if (t.columns[i] == name) return i;
    }
    FAIL("no column " << name);
    return 0;
}

double num(const Cell& c)
{
    return std::get<double>(c);
}

std::string str(const Cell& c)
{
    return std::get<std::string>(c);
}

// Byte comparison against tests/golden; SRGC_UPDATE_GOLDEN=1 rewrites the file.
void check_golden(const std::string& name, const std::string& actual)
{
    const std::string path = std::string(SRGC_GOLDEN_DIR) + "/" + name;
    if (const char* u = std::getenv("SRGC_UPDATE_GOLDEN"); u && std::string(u) == "1") {
        std::ofstream(path) << actual;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << path);
    const std::string expected{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    CAPTURE(name);
    CHECK(actual == expected);
}

ConfigFile golden_config(const std::string& name)
{
    return ConfigFile::load(std::string(SRGC_GOLDEN_DIR) + "/" + name);
}

}  // namespace

TEST_CASE("config file parsing")
{
    const auto cfg = cfg_from("[a]\nx = 1.5\nlist = 1, 2,3\ng_min = 0\ng_max = 1\ng_points = 5\n"
                              "bad = 1.5x\nword = hello\n; comment\n");
    CHECK(cfg.number("a", "x") == 1.5);
    CHECK(cfg.number("a", "missing", 7.0) == 7.0);
    CHECK(cfg.numbers("a", "list") == std::vector<double>{1, 2, 3});
    CHECK(cfg.axis("a", "g") == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
    CHECK(cfg.axis("a", "list").size() == 3);
    CHECK_THROWS_AS(cfg.number("a", "bad"), ConfigError);
    CHECK_THROWS_AS(cfg.number("a", "nope"), ConfigError);
    CHECK_THROWS_AS(cfg.count("a", "x"), ConfigError);
    CHECK(cfg.text("a", "word") == "hello");
    CHECK_NOTHROW(cfg.reject_unused());

    const auto typo = cfg_from("[a]\nx = 1\ny = 2\n");
    typo.number("a", "x");
    try {
        typo.reject_unused();
        FAIL("expected unknown-key error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("a.y") != std::string::npos);
    }
    CHECK_THROWS_AS(cfg_from("[a\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS(cfg_from("[a]\ng_min = 0\ng_max = 1\ng_points = 0\n").axis("a", "g"), ConfigError);
}

TEST_CASE("numeric text policy")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");

    Report r{"t", {Table{"x", {"a", "b", "c", "d"}, {}}}};
    r.tables[0].add({std::string("he,llo"), std::nan(""), std::uint64_t{3}, true});
    CHECK(csv(r) == "a,b,c,d\n\"he,llo\",nan,3,1\n");
    const std::string j = json(r);
    CHECK(j.find("\"b\": null") != std::string::npos);
    CHECK(j.find("\"d\": true") != std::string::npos);
    CHECK_THROWS_AS(r.tables[0].add({1.0}), std::logic_error);
    CHECK_THROWS_AS(parse_format("xml"), ConfigError);
}

TEST_CASE("asymptotics command")
{
    SUBCASE("corner point")
    {
        const auto r = cmd_asymptotics(
            cfg_from(kGms + "[rates]\nR1 = 0.346573590279973\nR2 = 0.346573590279973\n"), {});
        const auto& t = r.tables[0];
        REQUIRE(t.rows.size() == 1);
        CHECK(str(t.rows[0][column(t, "region")]) == "boundary");
        CHECK(num(t.rows[0][column(t, "jep_exponent")]) == 0.0);
    }
    SUBCASE("400-point grid")
    {
        const auto r = cmd_asymptotics(cfg_from(kGms +
                                                "[rates]\nR1_min = 0.05\nR1_max = 1.2\nR1_points = 20\n"
                                                "R2_min = 0\nR2_max = 1.2\nR2_points = 20\n"),
                                       {});
        const auto& t = r.tables[0];
        REQUIRE(t.rows.size() == 400);
        const auto c = column(t, "jep_exponent");
        // Rows run R1-major, so rows j and j + 20 share R2.
        for (std::size_t k = 20; k < 400; ++k) CHECK(num(t.rows[k][c]) >= num(t.rows[k - 20][c]));
        for (const auto& row : t.rows) {
            CHECK(num(row[c]) >= 0.0);
            CHECK(num(row[column(t, "sep_e2")]) >= 0.0);
        }
    }
    SUBCASE("malformed distortions")
    {
        try {
            cmd_asymptotics(cfg_from("[source]\nfamily = gaussian\n[distortion]\nD1 = 0.2\nD2 = 0.3\n"
                                     "[rates]\nR1 = 1\nR2 = 1\n"),
                            {});
            FAIL("expected config error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("requires σ² > D1 > D2") != std::string::npos);
        }
    }
    SUBCASE("unknown keys fail before any work")
    {
        CHECK_THROWS_AS(cmd_asymptotics(cfg_from(kGms + "[rates]\nR1 = 1\nR2 = 1\nR3 = 1\n"), {}),
                        ConfigError);
    }
    SUBCASE("degenerate moderate constants and R2 = 0")
    {
        const auto r = cmd_asymptotics(cfg_from("[source]\nfamily = two_point\nc = 1\n"
                                                "[distortion]\nD1 = 0.5\nD2 = 0.25\n"
                                                "[rates]\nR1 = 1\nR2 = 0\n"),
                                       {});
        const auto& consts = r.tables[1];
        CHECK(std::isnan(num(consts.rows[0][column(consts, "moderate_v_jep")])));
        const auto& t = r.tables[0];
        CHECK(std::isnan(num(t.rows[0][column(t, "logM1")])));
    }
    check_golden("asymptotics_corner.csv",
                 csv(cmd_asymptotics(golden_config("asymptotics_corner.ini"), {})));
}

TEST_CASE("exponent grid command")
{
    const std::string grid =
        "[grid]\nR1_min = 0.05\nR1_max = 1.2\nR1_points = 24\nR2_min = 0.05\nR2_max = 1.2\nR2_points = 24\n";
    const auto r = cmd_exponent_grid(cfg_from(kGms + grid), {});
    const auto& t = r.tables[0];
    REQUIRE(t.rows.size() == 576);
    const auto reg = column(t, "region"), jep = column(t, "jep_exponent"),
               l1 = column(t, "jep_lambda1"), contour = column(t, "contour");
    const std::size_t side = 24;
    auto cell = [&](std::size_t i, std::size_t j) -> const std::vector<Cell>& {
        return t.rows[i * side + j];
    };
    bool strict = false;
    for (std::size_t i = 0; i < side; ++i) {
        for (std::size_t j = 0; j < side; ++j) {
            const auto& row = cell(i, j);
            const std::string status = str(row[reg]);
            // Zero set coincides with the complement of the region interior.
            CHECK((num(row[jep]) > 0.0) == (status == "inside"));
            // Contour cells sit within one grid step of an interior cell.
            if (std::get<bool>(row[contour])) {
                CHECK(status != "inside");
                bool near = false;
                if (i > 0) near |= str(cell(i - 1, j)[reg]) == "inside";
                if (i + 1 < side) near |= str(cell(i + 1, j)[reg]) == "inside";
                if (j > 0) near |= str(cell(i, j - 1)[reg]) == "inside";
                if (j + 1 < side) near |= str(cell(i, j + 1)[reg]) == "inside";
                CHECK(near);
            }
            // The adaptive positive set contains the λ = 1 positive set.
            if (num(row[l1]) > 0.0) CHECK(num(row[jep]) > 0.0);
            if (num(row[l1]) == 0.0 && num(row[jep]) > 0.0) strict = true;
        }
    }
    CHECK(strict);

    const auto one = cmd_exponent_grid(cfg_from(kGms + "[grid]\nR1 = 0.6\nR2 = 0.8\n"), {});
    CHECK(one.tables[0].rows.size() == 1);
    CHECK_THROWS_AS(
        cmd_exponent_grid(cfg_from(kGms + "[grid]\nR1_min = 0.1\nR1_max = 1\nR1_points = 0\nR2 = 1\n"), {}),
        ConfigError);
    CHECK_THROWS_AS(cmd_exponent_grid(cfg_from(kGms + "[grid]\nR1 =\nR2 = 1\n"), {}), ConfigError);
    check_golden("exponent_grid.json", json(cmd_exponent_grid(golden_config("exponent_grid.ini"), {})));
}

TEST_CASE("simulate command")
{
    const std::string base = kGms +
                             "[scheme]\nn = 8, 10\nkind1 = iid\nkind2 = spherical\nsizing = explicit\n"
                             "M1 = 12\nM2 = 6\n[simulation]\ntrials = 700\nseed = 5\n";
    const auto a = csv(cmd_simulate(cfg_from(base), {}));
    CHECK(a == csv(cmd_simulate(cfg_from(base), {})));
    RunOptions four;
    four.workers = 4;
    CHECK(a == csv(cmd_simulate(cfg_from(base), four)));
    RunOptions reseed;
    reseed.seed = 6;
    CHECK(a != csv(cmd_simulate(cfg_from(base), reseed)));

    const auto r = cmd_simulate(cfg_from(base), {});
    const auto& t = r.tables[0];
    REQUIRE(t.rows.size() == 2);
    for (const auto& row : t.rows) {
        const auto jep = std::get<std::uint64_t>(row[column(t, "jep_count")]);
        const auto s1 = std::get<std::uint64_t>(row[column(t, "sep1_count")]);
        const auto s2 = std::get<std::uint64_t>(row[column(t, "sep2_count")]);
        CHECK(std::max(s1, s2) <= jep);
        CHECK(jep <= s1 + s2);
        CHECK(num(row[column(t, "jep_lo")]) <= num(row[column(t, "jep_hat")]));
    }

    SUBCASE("second-order sizing carries the target")
    {
        const auto p = cmd_simulate(
            cfg_from(kGms + "[scheme]\nn = 16\nsizing = second_order\nepsilon = 0.2\n"
                            "[simulation]\ntrials = 50\n"),
            {});
        const auto& pt = p.tables[0];
        CHECK(num(pt.rows[0][column(pt, "predicted_epsilon")]) == 0.2);
    }
    SUBCASE("rate sizing uses floor(e^{nR}) and predicts the exponent")
    {
        const auto p = cmd_simulate(
            cfg_from(kGms + "[scheme]\nn = 8\nsizing = rates\nR1 = 0.55\nR2 = 0.8\n"
                            "[simulation]\ntrials = 50\nengine = distance-law\n"),
            {});
        const auto& pt = p.tables[0];
        CHECK(std::get<std::uint64_t>(pt.rows[0][column(pt, "M1")]) ==
              static_cast<std::uint64_t>(std::floor(std::exp(8 * 0.55))));
        CHECK(num(pt.rows[0][column(pt, "predicted_exponent")]) > 0.0);
    }
    SUBCASE("budget refusal reports the cost")
    {
        RunOptions tight;
        tight.budget = 1000;
        try {
            cmd_simulate(cfg_from(base), tight);
            FAIL("expected budget refusal");
        } catch (const BudgetError& e) {
            CHECK(e.cost() == 700.0 * 18 * (8 + 10));
        }
    }
    SUBCASE("invalid inputs")
    {
        CHECK_THROWS_AS(cmd_simulate(cfg_from(kGms + "[scheme]\nn =\nsizing = explicit\nM1 = 2\nM2 = 2\n"
                                                     "[simulation]\ntrials = 10\n"),
                                     {}),
                        ConfigError);
        CHECK_THROWS_AS(cmd_simulate(cfg_from(kGms + "[scheme]\nn = 8, 10\nsizing = explicit\nM1 = 2\n"
                                                     "M2 = 2\n[simulation]\ntrials = 10, 20, 30\n"),
                                     {}),
                        ConfigError);
        CHECK_THROWS_AS(cmd_simulate(cfg_from(kGms + "[scheme]\nn = 8\nsizing = magic\n"
                                                     "[simulation]\ntrials = 10\n"),
                                     {}),
                        ConfigError);
    }
    check_golden("simulate.csv", csv(cmd_simulate(golden_config("simulate.ini"), {})));
}

TEST_CASE("compare command")
{
    SUBCASE("psi slope across n against r_iid")
    {
        const auto r = cmd_compare(cfg_from("[compare]\nmode = psi\nkind = iid\nn = 10, 20, 30\n"
                                            "w = 1\nP = 0.5\nD = 0.65\ntrials = 300000\nseed = 3\n"),
                                   {});
        const auto& fit = r.tables[1];
        const double slope = num(fit.rows[0][column(fit, "slope")]);
        const double predicted = num(fit.rows[0][column(fit, "predicted_slope")]);
        CHECK(predicted == doctest::Approx(math::r_iid(1.0, 0.5, 0.65)).epsilon(1e-14));
        CHECK(std::abs(slope - predicted) <= 0.15 * predicted);
        const auto& pts = r.tables[0];
        REQUIRE(pts.rows.size() == 3);
        for (const auto& row : pts.rows) {
            // The exact law sits inside a generous band around the estimate.
            CHECK(std::abs(num(row[column(pts, "estimate")]) - num(row[column(pts, "exact")])) <=
                  4.0 * (num(row[column(pts, "hi")]) - num(row[column(pts, "lo")])));
        }
    }
    SUBCASE("jep trend rows")
    {
        const auto r = cmd_compare(
            cfg_from("[source]\nfamily = gaussian\n[distortion]\nD1 = 0.6\nD2 = 0.4\n"
                     "[compare]\nmode = jep\n[scheme]\nn = 12, 16\nsizing = second_order\nepsilon = 0.2\n"
                     "[simulation]\ntrials = 200\nengine = distance-law\n"),
            {});
        const auto& pts = r.tables[0];
        REQUIRE(pts.rows.size() == 2);
        for (const auto& row : pts.rows) {
            CHECK(num(row[column(pts, "prediction")]) == 0.2);
            CHECK(num(row[column(pts, "gap")]) ==
                  doctest::Approx(std::abs(num(row[column(pts, "jep_hat")]) - 0.2)));
        }
    }
    SUBCASE("empty simulation input")
    {
        CHECK_THROWS_AS(cmd_compare(cfg_from("[compare]\nmode = psi\nn =\nw = 1\nP = 0.5\nD = 0.6\n"
                                             "trials = 10\n"),
                                    {}),
                        ConfigError);
        CHECK_THROWS_AS(cmd_compare(cfg_from("[compare]\nmode = psi\nn = 10, 20\nw = 1\nP = 0.5\n"
                                             "D = 0.6\ntrials = 10, 20, 30\n"),
                                    {}),
                        ConfigError);
        CHECK_THROWS_AS(cmd_compare(cfg_from("[compare]\nmode = nope\n"), {}), ConfigError);
    }
}
