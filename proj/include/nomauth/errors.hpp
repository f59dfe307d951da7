#pragma once

#include <stdexcept>
#include <string>

namespace nomauth {

// Error taxonomy shared across the library. Each condition gets its own type
// so callers can branch on the failure mode; the C API maps these to codes.
enum class ErrorCode {
  InvalidArgument,
  Validation,
  EmptySeed,
  AllZeroSeed,
  DegenerateSelection,
  LengthMismatch,
  InvalidDimensions,
  NonPositiveDistance,
  DimensionMismatch,
  InsufficientCalibration,
  ZeroVector,
  OutOfRangeProbability,
  WindowExhausted,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define NOMAUTH_DEFINE_ERROR(Name)                        \
  class Name : public Error {                             \
   public:                                                \
    explicit Name(const std::string& what)                \
        : Error(ErrorCode::Name, #Name ": " + what) {}    \
  }

NOMAUTH_DEFINE_ERROR(EmptySeed);
NOMAUTH_DEFINE_ERROR(AllZeroSeed);
NOMAUTH_DEFINE_ERROR(DegenerateSelection);
NOMAUTH_DEFINE_ERROR(LengthMismatch);
NOMAUTH_DEFINE_ERROR(InvalidDimensions);
NOMAUTH_DEFINE_ERROR(NonPositiveDistance);
NOMAUTH_DEFINE_ERROR(DimensionMismatch);
NOMAUTH_DEFINE_ERROR(InsufficientCalibration);
NOMAUTH_DEFINE_ERROR(ZeroVector);
NOMAUTH_DEFINE_ERROR(OutOfRangeProbability);
NOMAUTH_DEFINE_ERROR(WindowExhausted);

#undef NOMAUTH_DEFINE_ERROR

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCode::Validation, "ValidationError: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what)
      : Error(ErrorCode::Io, "IoError: " + what) {}
};

}  // namespace nomauth
