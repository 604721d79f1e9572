#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modtensor {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TagMismatch : public Error {
public:
    TagMismatch() : Error("field tags differ") {}
    explicit TagMismatch(const std::string& what) : Error("field tags differ: " + what) {}
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero") {}
};

class InvalidModulus : public Error {
public:
    explicit InvalidModulus(const std::string& what) : Error(what) {}
};

class BothZero : public Error {
public:
    BothZero() : Error("gcd of two zero polynomials is undefined") {}
};

class ZeroPolynomial : public Error {
public:
    ZeroPolynomial() : Error("polynomial must be nonzero") {}
};

class ConstantPolynomial : public Error {
public:
    ConstantPolynomial() : Error("polynomial must have degree >= 1") {}
};

class NotMonic : public Error {
public:
    NotMonic() : Error("polynomial must be monic") {}
};

/// Raised when a factor of degree >= 2 could not be proven irreducible or split.
class FactorizationIncomplete : public Error {
public:
    explicit FactorizationIncomplete(const std::string& what)
        : Error("factorization incomplete: " + what) {}
};

class NonSquare : public Error {
public:
    NonSquare() : Error("matrix must be square") {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error("dimension mismatch: " + what) {}
};

class NoSolution : public Error {
public:
    NoSolution() : Error("right-hand side is outside the column space") {}
};

class InconsistentAction : public Error {
public:
    explicit InconsistentAction(const std::string& what)
        : Error("action is not a module action: " + what) {}
};

class ZeroVector : public Error {
public:
    ZeroVector() : Error("vector must be nonzero") {}
};

class WrongKind : public Error {
public:
    explicit WrongKind(const std::string& what) : Error(what) {}
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : Error("syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(const std::string& what) : Error("budget exceeded: " + what) {}
};

} // namespace modtensor
