#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad user input: invalid exponents, bad config, out-of-range arguments.
class InputError : public Error {
public:
    using Error::Error;
};

/// A function was evaluated outside the set where it is defined.
class DomainError : public InputError {
public:
    using InputError::InputError;
};

/// theta <= 0, so the lifespan exponent (p-1)/theta has no meaning.
class DegenerateExponentError : public InputError {
public:
    using InputError::InputError;
};

/// Inconsistent solver settings (cap below forcing, empty horizon, ...).
class SpecError : public InputError {
public:
    using InputError::InputError;
};

/// Non-finite intermediate values or a failed numerical procedure.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The reference quadrature failed to reach its tolerance.
class OracleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace blowup
