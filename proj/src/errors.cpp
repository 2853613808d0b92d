#include "sostar/errors.hpp"

namespace sostar {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::IncompatibleShape: return "IncompatibleShape";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::SingularDenominator: return "SingularDenominator";
    case ErrorCode::SingularA: return "SingularA";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RankNotTwo: return "RankNotTwo";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::ZeroRank: return "ZeroRank";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnsupportedObservable: return "UnsupportedObservable";
    case ErrorCode::NonUnitDeterminant: return "NonUnitDeterminant";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::CutoffExceeded: return "CutoffExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace sostar
