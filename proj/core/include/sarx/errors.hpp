#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sarx {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field-level problem found while validating an input document.
struct FieldError {
    std::string path;  // JSON-pointer style, e.g. "/cells-of-interest/0/cell"
    std::string message;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<FieldError> errors)
        : Error(summarize(errors)), errors_(std::move(errors)) {}
    ValidationError(std::string path, std::string message)
        : ValidationError(std::vector<FieldError>{{std::move(path), std::move(message)}}) {}

    const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
    static std::string summarize(const std::vector<FieldError>& errors) {
        std::string out = "validation failed";
        for (const auto& e : errors) out += "; " + e.path + ": " + e.message;
        return out;
    }

    std::vector<FieldError> errors_;
};

class ZeroProbabilityObservation : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class TerminalStateStep : public Error {
public:
    using Error::Error;
};

class UnreachableStratum : public Error {
public:
    using Error::Error;
};

class InfeasiblePath : public Error {
public:
    using Error::Error;
};

/// Raised by path translation; carries the offending path index when there is one.
class PathError : public Error {
public:
    PathError(const std::string& what, std::size_t index) : Error(what), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class NonAdjacentStep : public PathError {
public:
    using PathError::PathError;
};

class WrongStartCell : public PathError {
public:
    using PathError::PathError;
};

class StayNotSupported : public PathError {
public:
    using PathError::PathError;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class UnknownTemplateSet : public Error {
public:
    using Error::Error;
};

}  // namespace sarx
