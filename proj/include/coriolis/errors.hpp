#pragma once

#include <stdexcept>
#include <string>

namespace coriolis {

// Raised when an input violates a documented precondition. `field()` names
// the offending parameter so front ends can point at the right flag.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class UnsupportedOrder : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Iterative numerics that did not reach the requested accuracy.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(const std::string& what, double worst_residual)
        : std::runtime_error(what), worst_residual_(worst_residual) {}

    double worst_residual() const noexcept { return worst_residual_; }

private:
    double worst_residual_;
};

} // namespace coriolis
