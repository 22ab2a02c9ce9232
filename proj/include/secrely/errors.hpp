#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace secrely {

// Configuration field outside its allowed range. Carries the field name so
// front ends can point at the offending input.
class RangeError : public std::invalid_argument {
public:
    RangeError(std::string field, const std::string& message)
        : std::invalid_argument(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An alternating sum lost so many digits to cancellation that the result is
// meaningless in double precision.
class CancellationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Adaptive integration ran out of subdivisions. Carries the best estimate so
// callers can decide whether it is still usable.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& message, double best_value, double est_error)
        : std::runtime_error(message), best_value_(best_value), est_error_(est_error) {}

    double best_value() const noexcept { return best_value_; }
    double est_error() const noexcept { return est_error_; }

private:
    double best_value_;
    double est_error_;
};

// A computation produced NaN/Inf where a finite value is guaranteed for
// valid inputs.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or schema-violating configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failed to read or write an output artifact.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace secrely
