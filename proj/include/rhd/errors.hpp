#pragma once

#include <stdexcept>
#include <string>

namespace rhd {

/// Base class of every error this library raises.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A function was called outside its mathematical domain
/// (e.g. superluminal velocity, non-positive density).
struct DomainError : Error {
  using Error::Error;
};

/// Conserved-to-primitive recovery failed because the input state is not
/// admissible (the pressure equation has no positive root).
struct RecoveryError : Error {
  using Error::Error;
};

/// An iterative solver hit its iteration cap before reaching tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

/// A limiter was handed a cell whose average violates its precondition.
struct InvalidAverage : Error {
  using Error::Error;
};

/// A fan of edge normals does not close (sum of scaled normals != 0).
struct FanError : Error {
  using Error::Error;
};

/// A post-step cell average left the invariant region beyond slack.
/// Signals a CFL violation or an implementation fault.
struct IrpViolation : Error {
  using Error::Error;
};

/// Run configuration is malformed (unknown key, bad value, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Requested built-in scenario does not exist.
struct UnknownScenario : Error {
  using Error::Error;
};

}  // namespace rhd
