#ifndef LIEQ_ERRORS_HPP
#define LIEQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lieq {

/** Base of every error raised by the kernel. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Operands disagree in variable count, truncation, base dimension or component count. */
class DimensionError : public Error {
 public:
  using Error::Error;
};

/** A reciprocal, reversion or matrix inverse met a non-invertible leading term. */
class NonUnitError : public Error {
 public:
  using Error::Error;
};

/** Substitution of a series with nonzero constant term. */
class RecenteringError : public Error {
 public:
  using Error::Error;
};

/** A jet order is out of range, or orders of the operands do not match. */
class OrderError : public Error {
 public:
  using Error::Error;
};

/** Rank at the base point differs from the generic rank. */
class NonRegularError : public Error {
 public:
  using Error::Error;
};

/** A checked section is not of the form horizontal = order-zero part of vertical. */
class TildeError : public Error {
 public:
  using Error::Error;
};

/** A supplied lift does not project onto the section it lifts. */
class LiftError : public Error {
 public:
  using Error::Error;
};

/** delta does not map a declared symbol space into the next one. */
class ChainError : public Error {
 public:
  using Error::Error;
};

/** A bracket left the span of the generators. */
class ClosureError : public Error {
 public:
  using Error::Error;
};

/** Parallel transport asked of a connection with nonzero curvature. */
class ObstructionError : public Error {
 public:
  using Error::Error;
};

/** Malformed input to an operation that is otherwise well defined. */
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace lieq

#endif
