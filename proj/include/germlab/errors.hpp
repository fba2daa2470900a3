#pragma once

#include <stdexcept>
#include <string>

namespace germlab {

// Precondition of an operation violated (bad prime, wrong valuation, ...).
// The CLI maps this to exit code 2.
class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// An orbital sum did not agree between radius and radius+1; the chosen
// integration window does not capture the full support yet.
// CLI exit code 3.
class StabilizationError : public std::runtime_error {
public:
    explicit StabilizationError(const std::string& what) : std::runtime_error(what) {}
};

// A naive enumeration would exceed the configured tuple budget.
// CLI exit code 4.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// A coefficient was requested beyond the known absolute precision of a series,
// or a congruence could not be decided at the available precision.
class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace germlab
