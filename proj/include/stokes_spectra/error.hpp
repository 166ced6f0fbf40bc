#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stokes_spectra {

/// Failure categories raised by the numerical core. The C API maps each one
/// onto an `ss_status` code of the same name.
enum class ErrorCode {
  InvalidArgument,
  Parse,
  JumpDiscontinuity,
  NotDifferentiable,
  NoLimit,
  WiltonResonance,
  ContinuationFailure,
  DegenerateGroupVelocity,
  StableCollision,
  SecondaryResonance,
  DegenerateQuartet,
  DegenerateCurvature,
  BfResonance,
  Stable,
  SignRestriction,
  EigFailure,
  NewtonDiverged,
  InvalidData,
  Config,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace stokes_spectra
