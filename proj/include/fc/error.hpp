#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fc {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The caller asked for something malformed: bad arguments, violated
/// preconditions on plain data, unknown ids. The CLI maps these to exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Malformed expression text. `offset` is the byte offset of the failure.
class ParseError : public UsageError {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : UsageError("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

enum class Failure {
  domain,
  bracket,
  iteration_cap,
  nesting_violation,
  budget_exhausted,
  bound_violation,
  not_a_cut,
  divergence,
  one_sided_mismatch,
  no_witness,
  derivative_vanishes,
  not_cauchy,
  not_differentiable,
  precondition,
  window_collapse,
  not_a_cover,
  sweep_stall,
  level_cap,
  ill_conditioned,
  endpoint_mismatch,
};

const char* to_string(Failure f) noexcept;

/// The mathematics said no: a bracket without a sign change, a budget that ran
/// out, a limit that does not settle. The CLI maps these to exit 1.
class MathError : public Error {
 public:
  MathError(Failure failure, const std::string& what)
      : Error(std::string(to_string(failure)) + ": " + what), failure_(failure) {}

  Failure failure() const noexcept { return failure_; }

 private:
  Failure failure_;
};

/// Evaluation left the natural domain of an expression (ln of a non-positive
/// number, sqrt of a negative one, division by zero).
class DomainError : public MathError {
 public:
  DomainError(const std::string& what, double point)
      : MathError(Failure::domain, what + " at x = " + std::to_string(point)), point_(point) {}

  double point() const noexcept { return point_; }

 private:
  double point_;
};

/// Left and right limits both settled but to different values.
class OneSidedMismatch : public MathError {
 public:
  OneSidedMismatch(double left, double right);

  double left() const noexcept { return left_; }
  double right() const noexcept { return right_; }

 private:
  double left_;
  double right_;
};

}  // namespace fc
