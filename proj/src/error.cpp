#include "stokes_spectra/error.hpp"

namespace stokes_spectra {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::JumpDiscontinuity: return "jump-discontinuity";
    case ErrorCode::NotDifferentiable: return "not-differentiable";
    case ErrorCode::NoLimit: return "no-limit";
    case ErrorCode::WiltonResonance: return "Wilton-resonance";
    case ErrorCode::ContinuationFailure: return "continuation-failure";
    case ErrorCode::DegenerateGroupVelocity: return "degenerate-group-velocity";
    case ErrorCode::StableCollision: return "stable-collision";
    case ErrorCode::SecondaryResonance: return "secondary-resonance";
    case ErrorCode::DegenerateQuartet: return "degenerate-quartet";
    case ErrorCode::DegenerateCurvature: return "degenerate-curvature";
    case ErrorCode::BfResonance: return "bf-resonance";
    case ErrorCode::Stable: return "stable";
    case ErrorCode::SignRestriction: return "sign-restriction";
    case ErrorCode::EigFailure: return "eig-failure";
    case ErrorCode::NewtonDiverged: return "newton-diverged";
    case ErrorCode::InvalidData: return "invalid-data";
    case ErrorCode::Config: return "config-error";
    case ErrorCode::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace stokes_spectra
