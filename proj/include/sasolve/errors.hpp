#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sasolve {

/// Malformed or inconsistent input (bad syntax, unknown symbol, wrong shape of system).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position)
    {
    }
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class OrderMismatch : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A precondition on a mathematical operation failed (division by a constant in x, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The system has infinitely many complex solutions in its variables.
class NonZeroDimensional : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Randomised quasi-linearisation kept drawing degenerate coefficients.
class RetryExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sasolve
