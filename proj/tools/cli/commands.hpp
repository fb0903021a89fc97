#pragma once

#include <cstdint>
#include <optional>

#include "cli/config.hpp"
#include "cli/report.hpp"

namespace srgc::cli {

/// Command-line overrides shared by all subcommands.
struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;
    double budget = 1e10;  ///< distance multiply-adds per invocation
};

// Every command validates the whole config (including unknown keys) before
// doing any work. Errors surface as ConfigError, DomainError, NumericError or
// BudgetError.
Report cmd_asymptotics(const ConfigFile& cfg, const RunOptions& opts);
Report cmd_simulate(const ConfigFile& cfg, const RunOptions& opts);
Report cmd_exponent_grid(const ConfigFile& cfg, const RunOptions& opts);
Report cmd_compare(const ConfigFile& cfg, const RunOptions& opts);

}  // namespace srgc::cli
