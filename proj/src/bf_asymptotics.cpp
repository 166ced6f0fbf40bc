#include "stokes_spectra/bf_asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stokes_spectra/error.hpp"
#include "stokes_spectra/ffh.hpp"
#include "stokes_spectra/stokes.hpp"

namespace stokes_spectra {

namespace {

constexpr double kResonance = 1e-12;

double checked_inverse(double x, const char* what) {
  if (std::abs(x) < kResonance) throw Error(ErrorCode::BfResonance, what);
  return 1.0 / x;
}

}  // namespace

LemniscateModel bf_constants(const DispersionModel& model) {
  LemniscateModel lm;
  const double c0 = model.carrier_speed();
  lm.am_mode = model.smoothness() == Smoothness::DiscontinuousAtZero;
  lm.cg1 = model.group_velocity(1.0) - c0;
  lm.U = checked_inverse(model.omega(2.0) - 2.0 * c0, "w(2) = 2 c0");
  if (!lm.am_mode) lm.U += checked_inverse(model.group_velocity(0.0) - model.group_velocity(1.0), "w'(0) = w'(1)");
  lm.V = -0.5 * model.second_derivative(1.0);
  if (std::abs(lm.V) < kResonance) throw Error(ErrorCode::DegenerateCurvature, "w''(1) = 0");
  lm.delta_bf = -lm.U / lm.V;
  lm.r1 = 0.0;
  lm.unstable = lm.delta_bf > 0.0;
  lm.p1_max = lm.unstable ? std::sqrt(2.0 * lm.delta_bf) : 0.0;
  return lm;
}

std::array<LemniscatePoint, 2> lemniscate(const LemniscateModel& lm, double epsilon, double theta) {
  if (!lm.unstable) throw Error(ErrorCode::Stable, "delta_bf <= 0, no modulational instability");
  const double half = std::cos(0.5 * theta);
  const double re = epsilon * epsilon * lm.U * std::sin(theta);
  const double scale = 1.0 + lm.r1 * epsilon;
  const double p = epsilon * lm.p1_max * half * scale;
  const double im = (epsilon * lm.cg1 * lm.p1_max * scale + lm.gamma * epsilon * epsilon * epsilon) * half;
  return {LemniscatePoint{theta, +1, {re, im}, p}, LemniscatePoint{theta, -1, {re, -im}, -p}};
}

std::vector<LemniscatePoint> lemniscate_curve(const LemniscateModel& lm, double epsilon, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::vector<LemniscatePoint> plus, minus;
  for (int j = 0; j < n; ++j) {
    const auto pts = lemniscate(lm, epsilon, 2.0 * std::numbers::pi * j / n);
    plus.push_back(pts[0]);
    minus.push_back(pts[1]);
  }
  plus.insert(plus.end(), minus.begin(), minus.end());
  return plus;
}

double fit_am_gamma(const DispersionModel& model, const LemniscateModel& lm, const std::vector<double>& eps_list,
                    const AmFitOptions& options) {
  if (!lm.unstable) throw Error(ErrorCode::Stable, "delta_bf <= 0, nothing to fit");
  double num = 0.0, den = 0.0;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw Error(ErrorCode::SignRestriction, "the Akers-Milewski branch needs epsilon > 0");
    const StokesWave wave = validation_wave(model, eps, options.wave_modes);
    const double band = eps * lm.p1_max;
    std::vector<double> ps;
    for (int j = 0; j < options.samples; ++j) ps.push_back(band * (j + 0.5) / options.samples);
    const Sweep sw = sweep(model, wave, ps, options.N, 1e-10, options.jobs);
    for (const auto& pt : sw.unstable) {
      if (pt.lambda.real() <= 0.0 || std::abs(pt.lambda) > 4.0 * eps * std::max(1.0, lm.p1_max)) continue;
      const double x = pt.p / band;
      const double rest = pt.lambda.imag() - eps * lm.cg1 * lm.p1_max * x;
      num += rest * x / (eps * eps * eps);
      den += x * x;
    }
  }
  if (den == 0.0) throw Error(ErrorCode::InvalidData, "no unstable eigenvalues near the origin to fit");
  return num / den;
}

std::vector<LemniscatePoint> am_lemniscate(const DispersionModel& model, double epsilon, int n,
                                           const AmFitOptions& options, LemniscateModel* fitted) {
  if (model.family() != Family::AkersMilewski)
    throw Error(ErrorCode::InvalidArgument, "am_lemniscate needs an Akers-Milewski model");
  if (!(epsilon > 0.0)) throw Error(ErrorCode::SignRestriction, "the Akers-Milewski branch needs epsilon > 0");
  LemniscateModel lm = bf_constants(model);
  lm.gamma = fit_am_gamma(model, lm, {epsilon}, options);
  lm.gamma_fitted = true;
  if (fitted) *fitted = lm;
  return lemniscate_curve(lm, epsilon, n);
}

GrowthReport compare_growth(const DispersionModel& model, const CollisionSearch& search) {
  GrowthReport report;
  for (const auto& c : find_collisions(model, 1, search))
    if (c.krein_negative && !c.degenerate) report.triads.push_back(c);
  for (const auto& c : find_collisions(model, 2, search)) {
    if (!c.krein_negative) continue;
    try {
      const IsolaModel iso = quartet_isola(quartet_coeffs(model, c), c);
      report.quartets.push_back({c, iso.max_growth()});
    } catch (const Error&) {
    }
  }
  try {
    const LemniscateModel lm = bf_constants(model);
    report.bf_available = true;
    report.bf_unstable = lm.unstable;
    if (lm.unstable) {
      report.bf_growth = std::abs(lm.U);
      report.bf_growth_delta = std::abs(lm.U * lm.delta_bf);
    }
  } catch (const Error& e) {
    report.bf_note = e.what();
  }

  double quartet_max = 0.0;
  for (const auto& q : report.quartets) quartet_max = std::max(quartet_max, q.growth);
  if (!report.triads.empty())
    report.verdict = "triad-dominates";
  else if (!report.quartets.empty())
    report.verdict = report.bf_unstable && report.bf_growth > quartet_max ? "bf-dominates" : "quartet-dominates";
  else if (report.bf_unstable)
    report.verdict = "bf-dominates-by-default";
  else
    report.verdict = "none";
  return report;
}

}  // namespace stokes_spectra
