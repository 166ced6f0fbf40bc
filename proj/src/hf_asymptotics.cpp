#include "stokes_spectra/hf_asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "stokes_spectra/error.hpp"

namespace stokes_spectra {

namespace {

constexpr double kDegenerateCg = 1e-12;
constexpr double kSecondaryResonance = 1e-10;

double group_velocity_gap(const Collision& c) {
  const double den = c.cg2 - c.cg1;
  if (std::abs(den) < kDegenerateCg * std::max(1.0, std::abs(c.cg1)))
    throw Error(ErrorCode::DegenerateGroupVelocity,
                "equal frame group velocities at k1 + p0 and k2 + p0; the solvability system is singular");
  return den;
}

}  // namespace

std::complex<double> IsolaModel::correction(double theta) const {
  return {re_amp * std::sin(theta), im_amp * std::cos(theta) + center_shift};
}

double IsolaModel::p_correction(double theta) const { return p_center + p_amp * std::cos(theta); }

IsolaPoint IsolaModel::at(double epsilon, double theta) const {
  const double scale = std::pow(epsilon, order);
  return {theta, collision.lambda0 + scale * correction(theta), collision.p0 + scale * p_correction(theta)};
}

std::vector<IsolaPoint> IsolaModel::sample(double epsilon, int n) const {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "isola sample count must be positive");
  std::vector<IsolaPoint> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) out.push_back(at(epsilon, 2.0 * std::numbers::pi * j / n));
  return out;
}

double IsolaModel::most_unstable_theta() const {
  return re_amp >= 0.0 ? std::numbers::pi / 2 : 3 * std::numbers::pi / 2;
}

double IsolaModel::max_growth() const { return std::abs(re_amp); }

IsolaModel triad_isola(const DispersionModel& model, const Collision& collision) {
  if (collision.m != 1) throw Error(ErrorCode::InvalidArgument, "triad isola needs an m = 1 collision");
  const double K1 = collision.k1 + collision.p0;
  const double K2 = collision.k2 + collision.p0;
  if (K1 * K2 >= 0.0)
    throw Error(ErrorCode::StableCollision, "Krein-positive triad: (k2 + p0)/(k1 + p0) > 0");
  const double g1 = model.frame_group_velocity(K1);
  const double g2 = model.frame_group_velocity(K2);
  Collision c = collision;
  c.cg1 = g1;
  c.cg2 = g2;
  const double den = group_velocity_gap(c);

  // beta^2 K1 g2 = g1 K2 on |beta| = rho makes lambda1 off the imaginary axis.
  const double rho = std::sqrt(-K2 / K1);
  IsolaModel iso;
  iso.collision = c;
  iso.kind = IsolaKind::Triad;
  iso.rho = rho;
  iso.re_amp = -(rho * K1 * g2 + g1 * K2 / rho) / den;
  iso.im_amp = (rho * K1 * g2 - g1 * K2 / rho) / den;
  iso.p_amp = (rho * K1 - K2 / rho) / den;
  iso.order = 1;
  return iso;
}

QuartetCoeffs quartet_coeffs(const DispersionModel& model, const Collision& collision) {
  if (collision.m < 2) throw Error(ErrorCode::InvalidArgument, "quartet coefficients need m >= 2");
  const double c0 = model.carrier_speed();
  const double K1 = collision.k1 + collision.p0;
  const double K2 = collision.k2 + collision.p0;

  const double detune2 = c0 - model.phase_velocity(2.0);
  if (std::abs(detune2) < kSecondaryResonance)
    throw Error(ErrorCode::WiltonResonance, "second harmonic resonant with the carrier");

  // Flat eigenvalue / i with the opposite orientation, c0 K - w(K).
  auto flat = [&](double K) { return c0 * K - model.omega(K); };
  auto alpha = [&](double K, int s) {
    const double gap = flat(K) - flat(K + s);
    if (std::abs(gap) < kSecondaryResonance * std::max(1.0, std::abs(flat(K))))
      throw Error(ErrorCode::SecondaryResonance, "mode k + p0 " + std::string(s > 0 ? "+" : "-") +
                                                     " 1 collides with k + p0");
    return -(K + s) / gap;
  };

  QuartetCoeffs q;
  q.alpha1_plus = alpha(K1, 1);
  q.alpha1_minus = alpha(K1, -1);
  q.alpha2_plus = alpha(K2, 1);
  q.alpha2_minus = alpha(K2, -1);
  q.c2 = 1.0 / (2.0 * detune2);
  q.D = q.c2;

  Collision c = collision;
  c.cg1 = model.frame_group_velocity(K1);
  c.cg2 = model.frame_group_velocity(K2);
  const double g1 = c.cg1, g2 = c.cg2;
  const double den = group_velocity_gap(c);
  q.denominator = den;

  q.P = q.alpha1_plus + q.alpha1_minus - q.c2;
  q.R = q.alpha2_plus + q.alpha2_minus - q.c2;
  if (collision.m == 2) {
    q.Q = q.alpha2_minus + q.D;
    q.S = q.alpha1_plus + q.D;
  }
  q.A = -g2 * K1 * q.Q / den;
  q.B = (-g2 * K1 * q.P + g1 * K2 * q.R) / den;
  q.C = g1 * K2 * q.S / den;
  q.E = K1 * q.Q / den;
  q.F = (K1 * q.P - K2 * q.R) / den;
  q.G = -K2 * q.S / den;
  if (collision.m == 2 && q.E == 0.0) throw Error(ErrorCode::DegenerateQuartet, "E vanishes");
  return q;
}

IsolaModel quartet_isola(const QuartetCoeffs& q, const Collision& collision) {
  if (collision.m != 2) throw Error(ErrorCode::InvalidArgument, "quartet isola needs an m = 2 collision");
  if (q.E == 0.0) throw Error(ErrorCode::DegenerateQuartet, "E vanishes");
  if (!(q.G / q.E > 0.0)) throw Error(ErrorCode::StableCollision, "G/E <= 0: Krein-positive quartet");
  const double rho = std::sqrt(q.G / q.E);
  IsolaModel iso;
  iso.collision = collision;
  iso.kind = IsolaKind::Quartet;
  iso.rho = rho;
  iso.re_amp = q.A * rho - q.C / rho;
  iso.im_amp = -(q.A * rho + q.C / rho);
  iso.center_shift = -q.B;
  // E rho e^{it} + F + G rho^{-1} e^{-it} is real once rho^2 = G/E.
  iso.p_center = q.F;
  iso.p_amp = 2.0 * q.E * rho;
  iso.order = 2;
  return iso;
}

HigherOrderCorrection higher_order_corrections(const DispersionModel& model, const Collision& collision) {
  if (collision.m < 3) throw Error(ErrorCode::InvalidArgument, "higher-order corrections need m >= 3");
  const QuartetCoeffs q = quartet_coeffs(model, collision);
  return {{0.0, -q.B}, q.F};
}

IsolaModel isola_for(const DispersionModel& model, const Collision& collision) {
  if (collision.m == 1) return triad_isola(model, collision);
  if (collision.m == 2) return quartet_isola(quartet_coeffs(model, collision), collision);
  const HigherOrderCorrection h = higher_order_corrections(model, collision);
  IsolaModel iso;
  iso.collision = collision;
  iso.kind = IsolaKind::HigherOrder;
  iso.center_shift = h.lambda2.imag();
  iso.p_center = h.p2;
  iso.order = 2;
  return iso;
}

}  // namespace stokes_spectra
