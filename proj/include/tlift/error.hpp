#pragma once

#include <stdexcept>
#include <string>

namespace tlift {

enum class ErrorCode {
  NotClosed,
  DependentBasis,
  NotOrderFour,
  DoesNotPreserveAlgebra,
  BadGrade,
  EffectivityFailure,
  NonFinite,
  GridTooSmall,
  GridMismatch,
  AlgebraMismatch,
  ZeroLambda,
  NotInH,
  NotImmersed,
  FrameDiscontinuity,
  DimensionMismatch,
  NotLiftable,
  NotConformal,
  BranchPoint,
  MaskedPoint,
  NotKahler,
  NotLagrangian,
  NotUnitImaginary,
  LiftPropertyViolated,
  ParseError,
  UnknownFixture,
  UnknownCheck,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-checkable error kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tlift
