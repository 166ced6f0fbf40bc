#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stokes_spectra/dispersion.hpp"

namespace stokes_spectra {

/// A 2pi-periodic, even traveling wave u(x) = sum_n uhat_n e^{inx} with speed c.
///
/// Amplitude is pinned by uhat_1 = epsilon/2 (the cos x coefficient equals
/// epsilon) and the mean uhat_0 is zero. Waves built by stokes_expand keep
/// the per-order profiles; waves built by stokes_numeric only carry the
/// assembled coefficients.
struct StokesWave {
  explicit StokesWave(DispersionModel m) : model(std::move(m)) {}

  DispersionModel model;
  double epsilon = 0.0;
  int order = 0;         // expansion order, or the Galerkin mode count for numeric waves
  bool numeric = false;
  // cos_coeffs[j][n] is the coefficient of cos(nx) in u_j; row 0 is empty.
  std::vector<std::vector<double>> cos_coeffs;
  // c_0, c_1, ..., c_order for expansions; {c_0} for numeric waves.
  std::vector<double> c_series;
  // uhat_0 .. uhat_M, all real; uhat_{-n} = uhat_n.
  std::vector<double> fourier;
  double speed = 0.0;

  double uhat(int n) const noexcept;
  /// Largest n whose coefficient is not negligible next to uhat_1.
  int bandwidth() const noexcept;
};

/// Stokes expansion to the given order, solving the linear hierarchy mode by
/// mode; c_{j-1} is fixed by solvability on the cos x mode at order j.
StokesWave stokes_expand(const DispersionModel& model, double epsilon, int order);

struct NumericStokesOptions {
  double tolerance = 1e-12;
  int max_iterations = 50;
};

/// Newton solution of the Galerkin truncation of -c u' + L u + (u^2)' = 0 on
/// n_modes cosine modes, seeded from the expansion.
StokesWave stokes_numeric(const DispersionModel& model, double epsilon, int n_modes,
                          const NumericStokesOptions& options = {});

/// The wave fed to spectral computations: the fourth-order expansion for
/// epsilon <= 1e-3, the Galerkin solution above that or whenever a harmonic
/// up to the fourth is resonant with the carrier.
StokesWave validation_wave(const DispersionModel& model, double epsilon, int n_modes = 32);

/// Sup norm of -c u' + L u + (u^2)' for the even wave with the given
/// nonnegative-index coefficients, evaluated exactly in Fourier space and
/// sampled on at least `grid` points.
double traveling_wave_residual(const DispersionModel& model, std::span<const double> uhat, double c,
                               int grid = 64);

/// {"family", "params", "epsilon", "c", "coeffs"}.
std::string to_json(const StokesWave& wave);

}  // namespace stokes_spectra
