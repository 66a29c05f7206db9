#pragma once

#include <stdexcept>
#include <string>

namespace groupwalk {

enum class ErrorKind {
  NotLatinSquare,
  NotAssociative,
  NoIdentity,
  NoInverse,
  OrderCapExceeded,
  UnknownPreset,
  SeedOutsideAmbient,
  GroupMismatch,
  InvalidDistribution,
  EmptySupport,
  EigensolverFailure,
  CapExceeded,
  InsufficientData,
  NoClosedForm,
  SamplerUnavailable,
  ToleranceCollision,
  ConfigError,
  IoError,
};

const char* to_string(ErrorKind kind);

/// All library failures throw Error; kind() identifies the contract that was
/// violated, what() names the offending indices/fields.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace groupwalk
