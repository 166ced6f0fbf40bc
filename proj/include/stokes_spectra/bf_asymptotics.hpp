#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "stokes_spectra/dispersion.hpp"
#include "stokes_spectra/flatspec.hpp"
#include "stokes_spectra/hf_asymptotics.hpp"

namespace stokes_spectra {

/// Constants of the Benjamin-Feir figure-eight near lambda = 0, p = 0.
struct LemniscateModel {
  double cg1 = 0.0;  // w'(1) - w(1)
  double U = 0.0;
  double V = 0.0;    // -w''(1)/2
  double delta_bf = 0.0;
  double r1 = 0.0;
  double p1_max = 0.0;  // sqrt(2 delta_bf) when unstable
  bool unstable = false;
  bool am_mode = false;
  // Akers-Milewski only: cubic imaginary coefficient fitted from FFH spectra.
  double gamma = 0.0;
  bool gamma_fitted = false;
};

/// U = 1/(w'(0) - w'(1)) + 1/(w(2) - 2 c0), V = -w''(1)/2, delta = -U/V.
/// For Akers-Milewski the k = 0 mode is not resonant and the first term drops.
LemniscateModel bf_constants(const DispersionModel& model);

struct LemniscatePoint {
  double theta;
  int branch;  // +1 or -1, the sign in front of both p and Im lambda
  std::complex<double> lambda;
  double p;
};

/// Both branches at angle theta:
///   Re = eps^2 U sin t, p = +-eps sqrt(2 delta) cos(t/2),
///   Im = +-(eps cg1 sqrt(2 delta) + gamma eps^3) cos(t/2)   (gamma = 0 off the AM branch).
std::array<LemniscatePoint, 2> lemniscate(const LemniscateModel& lm, double epsilon, double theta);

/// n angles theta = 2 pi j / n on both branches, ordered by branch then theta.
std::vector<LemniscatePoint> lemniscate_curve(const LemniscateModel& lm, double epsilon, int n = 256);

struct AmFitOptions {
  int N = 32;
  int wave_modes = 48;
  int samples = 24;  // Floquet exponents across the positive lobe
  int jobs = 1;
};

/// Least-squares cubic coefficient of the AM imaginary part from FFH slices at
/// each amplitude in eps_list.
double fit_am_gamma(const DispersionModel& model, const LemniscateModel& lm, const std::vector<double>& eps_list,
                    const AmFitOptions& options = {});

/// Akers-Milewski figure-eight at eps > 0 with gamma fitted at that amplitude.
std::vector<LemniscatePoint> am_lemniscate(const DispersionModel& model, double epsilon, int n = 256,
                                           const AmFitOptions& options = {}, LemniscateModel* fitted = nullptr);

struct QuartetGrowth {
  Collision collision;
  double growth;  // |A sqrt(G/E) - C sqrt(E/G)|
};

struct GrowthReport {
  std::vector<Collision> triads;  // Krein-negative m = 1 collisions
  std::vector<QuartetGrowth> quartets;
  bool bf_available = false;  // bf_constants succeeded
  std::string bf_note;        // why not, when it failed
  bool bf_unstable = false;
  double bf_growth = 0.0;          // |U|, the coefficient of eps^2 sin t
  double bf_growth_delta = 0.0;    // |U delta_bf|
  std::string verdict;  // triad-dominates | quartet-dominates | bf-dominates | bf-dominates-by-default | none
};

GrowthReport compare_growth(const DispersionModel& model, const CollisionSearch& search = {});

}  // namespace stokes_spectra
