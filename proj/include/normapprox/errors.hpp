#pragma once

#include <stdexcept>
#include <string>

namespace normapprox {

/// Argument outside the mathematical domain of an operation (p < 1, n < 2, x = 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Operand lengths disagree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Parameters that violate the invariants of their norm family.
class InvalidParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed (singular system, no admissible root).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace normapprox
