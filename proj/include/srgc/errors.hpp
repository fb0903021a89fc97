#pragma once

#include <stdexcept>
#include <string>

namespace srgc {

// Exception hierarchy. Each family maps onto one CLI exit code.

/// Invalid configuration: violated invariant, bad parameter, mismatched shape.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Numerical failure (bracketing, quadrature, non-convergence).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// A simulation request whose estimated cost exceeds the configured budget.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, double cost)
        : std::runtime_error(what), cost_(cost) {}
    double cost() const noexcept { return cost_; }

private:
    double cost_;
};

}  // namespace srgc
