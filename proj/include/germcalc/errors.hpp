#pragma once

#include <stdexcept>
#include <string>

namespace germcalc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed textual or JSON input.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

/// A germ specification violating Delta(0,0) = 0 or w(0,0) != 0, or an
/// otherwise unusable input object.
class InvalidSpecError : public Error {
public:
    explicit InvalidSpecError(const std::string& msg) : Error("invalid spec: " + msg) {}
};

/// Requested index/order outside the supported range.
class OutOfRangeError : public Error {
public:
    explicit OutOfRangeError(const std::string& msg) : Error("out of range: " + msg) {}
};

/// invert_unit on a series whose constant term is not invertible.
class NonUnitError : public Error {
public:
    explicit NonUnitError(const std::string& msg) : Error("non-unit: " + msg) {}
};

/// compose2 with a substituted pair that has a nonzero constant term.
class IllFormedCompositionError : public Error {
public:
    explicit IllFormedCompositionError(const std::string& msg)
        : Error("ill-formed composition: " + msg) {}
};

/// Exact ideal division failed; carries the bidegree of the first offending
/// remainder term (relative to the dividend).
class NotDivisibleError : public Error {
public:
    NotDivisibleError(int xk, int yk)
        : Error("not divisible: first offending term at bidegree (" + std::to_string(xk) +
                "," + std::to_string(yk) + ")"),
          xk_(xk),
          yk_(yk) {}
    int xk() const { return xk_; }
    int yk() const { return yk_; }

private:
    int xk_;
    int yk_;
};

/// revert1 on a series with valuation != 1.
class NotReversibleError : public Error {
public:
    explicit NotReversibleError(const std::string& msg) : Error("not reversible: " + msg) {}
};

/// log_diffeo on a map whose linear part is not the identity.
class NotUnipotentError : public Error {
public:
    explicit NotUnipotentError(const std::string& msg) : Error("not unipotent: " + msg) {}
};

/// exp_apply/flow on a field whose components have valuation < 2.
class NotNilpotentError : public Error {
public:
    explicit NotNilpotentError(const std::string& msg) : Error("not nilpotent: " + msg) {}
};

/// A property that is a theorem of the underlying algebra failed; always an
/// implementation bug, never a data problem.
class InvariantBreachError : public Error {
public:
    explicit InvariantBreachError(const std::string& msg)
        : Error("internal invariant breach: " + msg) {}
};

/// The lambda-degree bound of the parametric first integral failed.
class DegreeBoundViolatedError : public InvariantBreachError {
public:
    explicit DegreeBoundViolatedError(const std::string& msg)
        : InvariantBreachError("lambda degree bound violated: " + msg) {}
};

/// Exact linear solve hit a singular matrix.
class SingularMatrixError : public InvariantBreachError {
public:
    explicit SingularMatrixError(const std::string& msg)
        : InvariantBreachError("singular matrix: " + msg) {}
};

} // namespace germcalc
