#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paraidem {

enum class ErrorCode {
  // scalars
  IncompatibleRings,
  NoSquareRoot,
  NoSuchRoot,
  NotPrime,
  DivisionByZero,
  // laurent
  NonInvertibleValue,
  ZeroAssigned,
  ParseError,
  // polymatrix
  NotSquare,
  NotScalar,
  DimensionMismatch,
  ZeroCoefficient,
  // idempotents
  NotOrthonormal,
  NotOrthogonal,
  IsotropicVector,
  NotParaunitary,
  BadCharacteristic,
  NotCompleteSet,
  InvalidGroup,
  NotRankOne,
  // constructors
  NotUnitModulus,
  NegativeExponent,
  NotUnitVector,
  NotLatinSquare,
  SizeMismatch,
  VariableCollision,
  NotPseudoParaunitary,
  NotFullyAssigned,
  // pipelines
  InvalidPipeline,
  UnknownBinding,
  // a constructor produced output that fails its own postcondition
  InternalError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace paraidem
