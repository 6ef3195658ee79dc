#pragma once

#include <stdexcept>
#include <string>

namespace gaussembed {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Gram matrix (or a pivot during factorization) is not positive definite.
struct NotPositiveDefinite : Error {
    explicit NotPositiveDefinite(const std::string& what) : Error(what) {}
};

// Thomas determinant test failed: T <= 0, the inverse formula does not apply.
struct TNotPositive : Error {
    explicit TNotPositive(const std::string& what) : Error(what) {}
};

// An operation's documented precondition does not hold for the given input.
struct PreconditionViolated : Error {
    explicit PreconditionViolated(const std::string& what) : Error(what) {}
};

// Curvature tensor is identically zero; the query is handled upstream.
struct ZeroCurvature : Error {
    explicit ZeroCurvature(const std::string& what) : Error(what) {}
};

// Family point outside its admissible parameter range.
struct InvalidPoint : Error {
    explicit InvalidPoint(const std::string& what) : Error(what) {}
};

// Malformed input file or range specification.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace gaussembed
