#pragma once

#include <stdexcept>
#include <string>

namespace channelforge {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Matrix/vector dimensions incompatible with the requested operation.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// Input value outside the operation's domain (non-unit vector, bad basis, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Vectorization or Choi convention of an object does not match and cannot
/// be converted automatically.
class ConventionError : public Error {
public:
    using Error::Error;
};

/// Iterative routine failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Malformed channel/state file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A completely-positive map was required but the input is not CP.
/// Carries the offending (most negative) Choi eigenvalue as witness.
class NotCPError : public Error {
public:
    NotCPError(const std::string& what, double min_eigenvalue)
        : Error(what), min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

}  // namespace channelforge
