#pragma once

#include <stdexcept>
#include <string>

namespace hopfmorita {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (scalars, problem files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// Structurally valid input that violates a semantic requirement.
class ValidationError : public Error {
public:
    ValidationError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

class UnsupportedModelError : public Error {
public:
    using Error::Error;
};

class ArithmeticError : public Error {
public:
    using Error::Error;
};

/// A PBW product produced a monomial beyond the truncation order.
class TruncationOverflow : public Error {
public:
    using Error::Error;
};

/// An input violated an operation's precondition (non-central, non-unitary, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Something that theory guarantees failed to hold; indicates a bug or a
/// verification gap rather than bad input.
class InconsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace hopfmorita
