// errors.hpp: exception types shared by the simulator modules

#pragma once

#include <stdexcept>
#include <string>

namespace spinbath {

/// Argument outside the mathematical domain of an operation (N = 0, omega < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// H_S = eps J_z + Delta J_x with eps = Delta = 0 has no level structure to work with.
class DegenerateHamiltonianError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A quantity that must be real/Hermitian/traceless came out otherwise.
class NumericalConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double value_estimate, double error_estimate)
        : std::runtime_error(what), value_(value_estimate), error_(error_estimate) {}

    double value_estimate() const noexcept { return value_; }
    double error_estimate() const noexcept { return error_; }

private:
    double value_;
    double error_;
};

/// Requested time lies outside a precomputed grid.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// An evolution violated a hard invariant (trace or hermiticity) at `time()`.
class FailedRunError : public std::runtime_error {
public:
    FailedRunError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Model/engine combination the code has no solution for (exact dephasing with eps != 0, ...).
class UnsupportedModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace spinbath
