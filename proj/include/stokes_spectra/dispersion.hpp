#pragma once

#include <map>
#include <string>
#include <string_view>

namespace stokes_spectra {

enum class Family { Kawahara, Whitham, CapillaryWhitham, AkersMilewski };
enum class Smoothness { Smooth, DiscontinuousAtZero };

std::string_view to_string(Family family) noexcept;

/// A dispersion relation w(k) from the unidirectional model family
/// u_t + L u + (u^2)_x = 0 with symbol i w(k).
///
/// Whitham-type families take a depth `h` (infinite depth selects the
/// sgn(k) sqrt(|k| (1 + sigma k^2)) branch) and an optional surface tension
/// `sigma`. The Akers-Milewski relation sgn(k)(1 + sigma |k|)^2 jumps at k = 0;
/// every query at k = 0 for it throws ErrorCode::JumpDiscontinuity.
class DispersionModel {
 public:
  static DispersionModel kawahara(double a, double b);
  static DispersionModel whitham(double depth);
  static DispersionModel capillary_whitham(double depth, double sigma);
  static DispersionModel akers_milewski(double sigma);

  /// Parses "family:key=value,..." e.g. "kawahara:a=1,b=-0.25",
  /// "whitham:h=inf,sigma=2.5", "akersmilewski:sigma=1".
  static DispersionModel parse(std::string_view spec);

  Family family() const noexcept { return family_; }
  Smoothness smoothness() const noexcept;
  const std::map<std::string, double>& params() const noexcept { return params_; }
  double param(const std::string& key) const;

  /// Canonical "family:key=value,..." string; parse(spec_string()) round-trips.
  std::string spec_string() const;
  /// Parameters only, joined with ';' so they can sit in one CSV field.
  std::string params_string() const;

  double omega(double k) const;
  double phase_velocity(double k) const;
  double group_velocity(double k) const;
  double second_derivative(double k) const;

  /// c0 = c_p(1) = w(1).
  double carrier_speed() const { return omega(1.0); }
  /// Group velocity in the frame moving with the carrier, w'(k) - c0.
  double frame_group_velocity(double k) const { return group_velocity(k) - carrier_speed(); }

 private:
  DispersionModel(Family family, std::map<std::string, double> params);

  bool deep() const noexcept;
  // (1 + sigma k^2) tanh(kh)/k, analytically continued through k = 0.
  double whitham_symbol(double k) const;
  double central_difference(double k, int derivative) const;

  Family family_;
  std::map<std::string, double> params_;
  double a_ = 0.0, b_ = 0.0, h_ = 0.0, sigma_ = 0.0;
};

}  // namespace stokes_spectra
