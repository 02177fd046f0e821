#pragma once

#include <stdexcept>
#include <string>

namespace rwrc {

enum class ErrorCode {
  DisconnectedDomain,
  OriginMissing,
  DuplicateSite,
  DimensionMismatch,
  NonPositiveArgument,
  ArgumentOutOfRange,
  NonPositiveScale,
  InvalidProfile,
  FieldMismatch,
  NonPositiveWeight,
  EpsilonTooLarge,
  UnsupportedSetShape,
  DomainMismatch,
  DomainTooLarge,
  NonConvergence,
  UnsupportedDomain,
  DegenerateWeights,
  InvalidConfig,
};

const char* to_string(ErrorCode code);

/// True for failures of a numerical procedure, as opposed to invalid input.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rwrc
