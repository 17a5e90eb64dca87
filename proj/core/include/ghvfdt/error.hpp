#pragma once

#include <stdexcept>
#include <string>

namespace ghvfdt {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (non-finite values, negative counts,
/// wrong vector length, unparsable files).
class InputError : public Error {
public:
    using Error::Error;
};

/// A statistic was requested before enough observations exist to define it.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// A distance is mathematically undefined for the supplied statistics
/// (e.g. a histogram with no instances of one class).
class UndefinedDistance : public Error {
public:
    using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// An experiment or stream configuration cannot be satisfied.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace ghvfdt
