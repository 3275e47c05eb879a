#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace binexp {

/// Base of every error raised by the library for a bad input or an
/// unsupported range. Invariant violations are logic errors and do not
/// derive from this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class ZeroDivisorError : public DomainError {
public:
    ZeroDivisorError() : DomainError("division by zero") {}
};

/// A doubling, accumulation or squaring left the working range.
/// `step()` is the 1-based loop iteration where it happened.
class OverflowError : public Error {
public:
    OverflowError(const std::string& what, std::size_t step)
        : Error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, std::size_t iterations)
        : Error(what + " after " + std::to_string(iterations) + " iterations"),
          iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

/// A trace log was handed to a renderer or parser that does not match its
/// algorithm or field layout.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Raised by instrumented builds when a loop invariant fails to hold.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace binexp
