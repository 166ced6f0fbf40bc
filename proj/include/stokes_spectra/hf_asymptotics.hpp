#pragma once

#include <complex>
#include <vector>

#include "stokes_spectra/dispersion.hpp"
#include "stokes_spectra/flatspec.hpp"

namespace stokes_spectra {

enum class IsolaKind { Triad, Quartet, HigherOrder };

struct IsolaPoint {
  double theta;
  std::complex<double> lambda;
  double p;
};

/// Asymptotic isola near a collision,
///   lambda = lambda0 + eps^order (re_amp sin t + i (im_amp cos t + center_shift)),
///   p      = p0 + eps^order (p_center + p_amp cos t),
/// where beta = rho e^{it} is the ratio of the two collision modes in the
/// leading eigenfunction phi1 + beta phi2.
struct IsolaModel {
  Collision collision;
  IsolaKind kind = IsolaKind::Triad;
  double rho = 1.0;
  double center_shift = 0.0;
  double re_amp = 0.0;
  double im_amp = 0.0;
  double p_center = 0.0;
  double p_amp = 0.0;
  int order = 1;

  std::complex<double> correction(double theta) const;
  double p_correction(double theta) const;
  IsolaPoint at(double epsilon, double theta) const;
  /// n points at theta = 2 pi j / n.
  std::vector<IsolaPoint> sample(double epsilon, int n = 256) const;
  double most_unstable_theta() const;
  /// max over theta of Re of the correction.
  double max_growth() const;
};

IsolaModel triad_isola(const DispersionModel& model, const Collision& collision);

struct QuartetCoeffs {
  double alpha1_plus = 0.0, alpha1_minus = 0.0, alpha2_plus = 0.0, alpha2_minus = 0.0;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0, G = 0.0;
  double c2 = 0.0;
  // Intermediate combinations: P, R for the diagonal terms, Q, S for the couplings.
  double P = 0.0, Q = 0.0, R = 0.0, S = 0.0;
  double denominator = 0.0;  // cg2 - cg1
};

/// Second-order solvability coefficients. Requires m >= 2; for m = 2 the
/// coupling terms Q and S are populated, for m >= 3 they vanish.
QuartetCoeffs quartet_coeffs(const DispersionModel& model, const Collision& collision);

IsolaModel quartet_isola(const QuartetCoeffs& coeffs, const Collision& collision);

struct HigherOrderCorrection {
  std::complex<double> lambda2;  // purely imaginary
  double p2;
};

HigherOrderCorrection higher_order_corrections(const DispersionModel& model, const Collision& collision);

/// Dispatches on collision.m: triad, quartet or the purely imaginary higher-order drift.
IsolaModel isola_for(const DispersionModel& model, const Collision& collision);

}  // namespace stokes_spectra
