#pragma once

#include <stdexcept>
#include <string>

namespace rk2 {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Division by a zero scalar or inversion of a zero measure.
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
    explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Evaluation of a rational function at a pole.
struct PoleError : Error {
    explicit PoleError(const std::string& what) : Error(what) {}
};

/// Mismatched endpoints, fibers, base points or primes between operands.
struct MismatchError : Error {
    explicit MismatchError(const std::string& what) : Error(what) {}
};

/// An element failed a structural validity check (matching condition,
/// non-equivalent set, malformed input).
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A finite-window computation would need data outside the window.
struct WindowError : Error {
    explicit WindowError(const std::string& what) : Error(what) {}
};

/// Malformed serialized input.
struct SchemaError : Error {
    explicit SchemaError(const std::string& what) : Error(what) {}
};

} // namespace rk2
