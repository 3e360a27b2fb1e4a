#pragma once

#include <stdexcept>
#include <string>

namespace recqed {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (catalog file, unit string, CSV).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Input that parses but violates a domain invariant or precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A numerical method could not deliver a result within its contract
/// (step-size rule, synthesis singularity, control cap, ...).
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace recqed
