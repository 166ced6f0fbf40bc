#pragma once

#include <complex>
#include <vector>

#include "stokes_spectra/dispersion.hpp"

namespace stokes_spectra {

/// A repeated eigenvalue of the flat state, lambda0(k1, p0) = lambda0(k2, p0).
struct Collision {
  int k1 = 0;
  int k2 = 0;  // k2 = k1 + m
  int m = 0;
  double p0 = 0.0;
  std::complex<double> lambda0;
  // Instability indicator: K1 K2 < 0 for m = 1, G/E > 0 for m = 2, false for m >= 3.
  bool krein_negative = false;
  double cg1 = 0.0;  // frame group velocity at k1 + p0
  double cg2 = 0.0;
  bool degenerate = false;  // cg1 == cg2, the solvability system is singular
  double residual = 0.0;    // |m w(1) - w(k2 + p0) + w(k1 + p0)|
};

/// i (w(k + p) - c0 (k + p)).
std::complex<double> flat_eigenvalue(const DispersionModel& model, int k, double p);

struct CollisionSearch {
  int k_min = -20;
  int k_max = 20;
  int grid = 10000;  // sample points on (0, 1)
};

/// Roots in p of m w(1) - w(k + m + p) + w(k + p) for every k1 = k in range.
/// Roots within 1e-8 of p = 0 or 1 belong to the Benjamin-Feir family and are
/// dropped. Results are ordered by (k1, p0).
std::vector<Collision> find_collisions(const DispersionModel& model, int m, const CollisionSearch& search = {});

/// Modes k in [k_min, k_max] with lambda0(k, 0+) = 0. For smooth models
/// satisfying the Benjamin-Feir assumptions this is {-1, 0, 1}; the
/// Akers-Milewski jump removes k = 0.
std::vector<int> bf_resonant_modes(const DispersionModel& model, int k_min = -20, int k_max = 20);

}  // namespace stokes_spectra
