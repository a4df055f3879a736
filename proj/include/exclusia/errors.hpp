#pragma once

#include <stdexcept>
#include <string>

namespace exclusia {

// Bad user input or parameters outside an operation's domain.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Problem size exceeds a configured budget (e.g. 2^L states).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Chain has no unique stationary distribution.
class ReducibleChainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iterative or truncated evaluation failed to converge.
class NonConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An algebraic relation check exceeded its tolerance.
class ResidualError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace exclusia
