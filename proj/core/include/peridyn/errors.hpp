#pragma once

#include <stdexcept>
#include <string>

namespace peridyn {

/// Invalid argument to a numerical routine (negative radius, bad tolerance, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Inconsistent or unusable configuration (model, grid, or experiment level).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its accuracy target within its budget.
/// Carries the last two global estimates so callers can see how far apart the
/// refinement levels were when the budget ran out.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double previous_estimate, double last_estimate)
        : std::runtime_error(what),
          previous_estimate_(previous_estimate),
          last_estimate_(last_estimate) {}

    double previous_estimate() const noexcept { return previous_estimate_; }
    double last_estimate() const noexcept { return last_estimate_; }

private:
    double previous_estimate_;
    double last_estimate_;
};

/// A data-structure invariant failed at runtime (broken Hermitian symmetry,
/// non-monotone table, mismatched grids, ...).
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace peridyn
