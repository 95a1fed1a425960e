#pragma once

#include <stdexcept>
#include <string>

namespace dfi {

enum class ErrorCode {
  NotMonic,
  NonIntegerCoefficients,
  Reducible,
  DegreeTooLarge,
  DivisionByZero,
  FieldMismatch,
  PrecisionCapExceeded,
  NotPrime,
  NotSquarefree,
  ZeroPolynomial,
  ZeroElement,
  UnsupportedPrime,
  NotSInteger,
  EmbeddingUndefined,
  CoefficientNotInK,
  NotSIntegral,
  EmptyFactorList,
  DimensionMismatch,
  RepeatedRoots,
  DegreeMismatch,
  ZeroValue,
  FactorVanishes,
  GeneralPositionFailure,
  SyntaxError,
  ValidationError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace dfi
