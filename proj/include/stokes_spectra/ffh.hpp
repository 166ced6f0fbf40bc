#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "stokes_spectra/dispersion.hpp"
#include "stokes_spectra/stokes.hpp"

namespace stokes_spectra {

/// Linearization about the wave in Fourier space at Floquet exponent p, on
/// modes n = -N..N (row/column index n + N):
///   M[n, m] = i (w(n + p) - c (n + p)) delta_nm + 2 i (n + p) uhat_{n - m}.
/// At epsilon = 0 the diagonal is the flat spectrum lambda0(n, p).
Eigen::MatrixXcd assemble(const DispersionModel& model, const StokesWave& wave, double p, int N);

/// True when N is too small for the wave's harmonic content.
bool under_resolved(const StokesWave& wave, int N);

struct SpectrumSlice {
  double p = 0.0;
  int N = 0;
  double epsilon = 0.0;
  std::vector<std::complex<double>> eigenvalues;  // sorted by (Im, Re)
  double max_re = 0.0;
  bool under_resolved = false;
  int polished = 0;  // eigenvalues improved by Newton polishing
};

struct SliceOptions {
  /// Newton-polish every eigenvalue with |Re| above this floor against the
  /// same matrix. Dense solvers carry errors of order 1e-16 |M|, which for
  /// stiff symbols (Kawahara at N = 32 has |w| ~ 1e7) swamps 1e-10 growth
  /// rates; the polished eigenvalue is limited by the eigenvector instead.
  /// Negative disables polishing.
  double polish_floor = 1e-13;
};

SpectrumSlice spectrum_slice(const DispersionModel& model, const StokesWave& wave, double p, int N,
                             const SliceOptions& options = {});

struct UnstablePoint {
  double p;
  std::complex<double> lambda;
};

struct Sweep {
  std::vector<SpectrumSlice> slices;   // input order
  // |Re| > tol_unstable max(1, |lambda|); stiff high modes carry roundoff near 1e-16 |lambda|.
  std::vector<UnstablePoint> unstable;  // slice order then (Im, Re)
};

/// Slices for every p in p_list, computed on `jobs` worker threads.
Sweep sweep(const DispersionModel& model, const StokesWave& wave, const std::vector<double>& p_list, int N,
            double tol_unstable = 1e-10, int jobs = 1, const SliceOptions& options = {});

/// Sorts lexicographically by (Im, Re).
void sort_eigenvalues(std::vector<std::complex<double>>& values);

/// Default truncation: 32 modes up to epsilon = 1e-2, 64 above.
int default_truncation(double epsilon);

}  // namespace stokes_spectra
