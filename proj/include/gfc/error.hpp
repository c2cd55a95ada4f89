#pragma once

#include <stdexcept>
#include <string>

namespace gfc {

enum class ErrorKind {
  NonpositiveExponent,
  SingularAtOrigin,
  ExponentOverflow,
  UnsupportedConvolutionPower,
  DerivativeLeavesC1,
  ProjectorSingular,
  OrderOutOfRange,
  NoAssociate,
  NonLatticeKernel,
  NotLnPair,
  RootFindingFailed,
  ImproperRational,
  IdentityPart,
  NotDifferentialEquation,
  NonIntegrableSingularity,
  CrossCheckFailed,
  InvalidArgument,
  Schema,
};

const char* to_string(ErrorKind kind);

/// Library error carrying a machine-readable kind next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gfc
