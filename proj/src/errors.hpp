#pragma once

#include <stdexcept>
#include <string>

namespace mixcore {

// Base class for everything this library throws on purpose.  The C wrapper
// maps each subclass to a distinct status code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of a function (z not in (0,1), ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Root bracket endpoints evaluate to the same sign.
class NoSignChangeError : public Error {
public:
    explicit NoSignChangeError(const std::string& what) : Error(what) {}
};

// A user-supplied function produced NaN or infinity inside the bracket.
class NonFiniteError : public Error {
public:
    explicit NonFiniteError(const std::string& what) : Error(what) {}
};

// Evaluation too close to a pole of the function.
class PoleError : public Error {
public:
    explicit PoleError(const std::string& what) : Error(what) {}
};

// Edge-size list violates the contract (not strictly increasing, below 3, ...).
class InvalidSizesError : public Error {
public:
    explicit InvalidSizesError(const std::string& what) : Error(what) {}
};

// Any other malformed argument (fractions that do not sum to 1, empty input, ...).
class InvalidParamsError : public Error {
public:
    explicit InvalidParamsError(const std::string& what) : Error(what) {}
};

// Retrieval construction exhausted its retry budget without an empty core.
class BuildFailedError : public Error {
public:
    explicit BuildFailedError(const std::string& what) : Error(what) {}
};

// Malformed serialized bytes.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace mixcore
