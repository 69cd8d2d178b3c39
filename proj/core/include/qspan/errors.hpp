#pragma once

#include <stdexcept>
#include <string>

namespace qspan {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed definition file, rational string, or value expression.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A vector was required to lie in the span of a basis and does not.
class NotInSpanError : public Error {
public:
    using Error::Error;
};

/// A vector list that must be linearly independent is not.
class NotIndependentError : public Error {
public:
    using Error::Error;
};

/// Two vectors from different symbol universes were combined.
class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

/// A magnitude comparison could not be resolved within the bit budget.
/// Carries the printed operand pair so callers can surface it.
class UndecidableError : public Error {
public:
    using Error::Error;
};

/// Interval refinement hit the working-precision cap.
class EvalDepthExceededError : public Error {
public:
    using Error::Error;
};

/// An operation requiring a nonzero vector received the zero vector.
class NonzeroRequiredError : public Error {
public:
    using Error::Error;
};

/// A chain longer than the available basis was requested.
class InsufficientBasisError : public Error {
public:
    using Error::Error;
};

/// The first basis vector must be a rational multiple of `one`.
class RationalFirstRequiredError : public Error {
public:
    using Error::Error;
};

/// A frame or basis index out of bounds.
class IndexOutOfRangeError : public Error {
public:
    using Error::Error;
};

} // namespace qspan
