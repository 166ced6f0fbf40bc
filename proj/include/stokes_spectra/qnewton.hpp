#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stokes_spectra/dispersion.hpp"
#include "stokes_spectra/hf_asymptotics.hpp"
#include "stokes_spectra/stokes.hpp"

namespace stokes_spectra {

/// Eigenpair of the Fourier-space linearization with v[pin] = 1.
struct EigenPair {
  std::complex<double> lambda;
  Eigen::VectorXcd v;  // modes -N..N
  double p = 0.0;
  double epsilon = 0.0;
  double residual = 0.0;
  int iterations = 0;
  int N = 0;
  int pin = 0;  // mode number, not index
};

struct NewtonOptions {
  double tolerance = 1e-12;  // on max |(M - lambda) v|, relative to max(1, |lambda|)
  int max_iterations = 50;
};

struct MatrixEigenPair {
  std::complex<double> lambda;
  Eigen::VectorXcd v;
  double residual;
  int iterations;
  bool converged;
};

/// Quasi-Newton solve of (M - lambda) v = 0, v[pin_index] = 1 starting from
/// (lambda, v). The augmented Jacobian [[M - lambda, -v], [e_pin^T, 0]] is
/// formed once and inverted; later steps use Broyden rank-one updates of the
/// inverse, with a fresh Jacobian whenever a step fails to reduce the residual.
MatrixEigenPair refine_eigenpair(const Eigen::MatrixXcd& M, std::complex<double> lambda, Eigen::VectorXcd v,
                                 int pin_index, const NewtonOptions& options = {});

/// refine_eigenpair on assemble(model, wave, p, N); throws newton-diverged.
EigenPair refine(const DispersionModel& model, const StokesWave& wave, double p, const EigenPair& guess, int N,
                 const NewtonOptions& options = {});

struct ContinuationOptions {
  int N = 16;
  int wave_modes = 32;
  double max_ratio = 2.0;  // between consecutive amplitudes
  int max_bisections = 8;
  NewtonOptions newton;
};

/// Follows the eigenpair seeded by the isola at angle theta through the
/// increasing amplitudes eps_targets. At each amplitude the wave is rebuilt
/// and p is the asymptotic p(eps, theta). Returns one pair per target.
std::vector<EigenPair> continue_in_epsilon(const DispersionModel& model, const IsolaModel& isola, double theta,
                                           const std::vector<double>& eps_targets,
                                           const ContinuationOptions& options = {});

}  // namespace stokes_spectra
