#include "rwrc/errors.hpp"

namespace rwrc {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DisconnectedDomain: return "DisconnectedDomain";
    case ErrorCode::OriginMissing: return "OriginMissing";
    case ErrorCode::DuplicateSite: return "DuplicateSite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveArgument: return "NonPositiveArgument";
    case ErrorCode::ArgumentOutOfRange: return "ArgumentOutOfRange";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::UnsupportedSetShape: return "UnsupportedSetShape";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NonConvergence || code == ErrorCode::DegenerateWeights;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace rwrc
