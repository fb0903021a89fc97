#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli/commands.hpp"
#include "srgc/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumeric = 3, kBudget = 4 };

using Command = std::function<srgc::cli::Report(const srgc::cli::ConfigFile&,
                                                const srgc::cli::RunOptions&)>;

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Successive-refinement Gaussian-codebook simulator and calculator"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_path;
    std::string format;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    double budget = 1e10;
    app.add_option("--config", config_path, "Experiment config file")->required();
    auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
    auto* workers_opt =
        app.add_option("--workers", workers, "Worker threads, 0 = all cores (overrides the config)");
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--budget", budget, "Compute budget in distance multiply-adds")
        ->capture_default_str();

    Command command;
    auto add = [&](const char* name, const char* help, Command fn) {
        app.add_subcommand(name, help)->callback([&command, fn] { command = fn; });
    };
    add("asymptotics", "Region, second-order, moderate and exponent calculators",
        srgc::cli::cmd_asymptotics);
    add("simulate", "Monte Carlo JEP/SEP estimates", srgc::cli::cmd_simulate);
    add("exponent-grid", "Exponents over a rate grid", srgc::cli::cmd_exponent_grid);
    add("compare", "Estimates against predictions, with slope fits", srgc::cli::cmd_compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        const auto cfg = srgc::cli::ConfigFile::load(config_path);
        srgc::cli::RunOptions opts;
        if (seed_opt->count()) opts.seed = seed;
        if (workers_opt->count()) opts.workers = workers;
        opts.budget = budget;
        if (format.empty()) format = cfg.text("output", "format", "csv");
        if (out_path.empty()) out_path = cfg.text("output", "path", "");
        const auto fmt = srgc::cli::parse_format(format);

        const auto report = command(cfg, opts);
        if (out_path.empty() || out_path == "-") {
            srgc::cli::write_report(std::cout, report, fmt);
        } else {
            std::ofstream out(out_path);
            if (!out) throw srgc::ConfigError("cannot write '" + out_path + "'");
            srgc::cli::write_report(out, report, fmt);
        }
        return kOk;
    } catch (const srgc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const srgc::BudgetError& e) {
        std::cerr << "budget refused: " << e.what() << '\n';
        return kBudget;
    } catch (const srgc::DomainError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const srgc::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumeric;
    }
}
