#pragma once

#include <stdexcept>
#include <string>

namespace sostar {

enum class ErrorCode {
  NonFinite,
  NotAntisymmetric,
  IncompatibleShape,
  ConvergenceFailure,
  DomainViolation,
  SingularDenominator,
  SingularA,
  SingularMatrix,
  IndexOutOfRange,
  InvalidArgument,
  RankNotTwo,
  ZeroMatrix,
  ZeroRank,
  Overflow,
  UnsupportedObservable,
  NonUnitDeterminant,
  CapacityExceeded,
  CutoffExceeded,
  ParseError,
};

// Stable, machine-readable name of an error code.
const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sostar
