#include "stokes_spectra/dispersion.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "stokes_spectra/error.hpp"

namespace stokes_spectra {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Below this |kh| the tanh(x)/x factor switches to its Taylor series.
constexpr double kSeriesThreshold = 1e-4;

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

double parse_number(const std::string& key, const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "infinity") return kInf;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::Parse, "bad value '" + text + "' for parameter '" + key + "'");
  return value;
}

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Kawahara: return "kawahara";
    case Family::Whitham: return "whitham";
    case Family::CapillaryWhitham: return "capillarywhitham";
    case Family::AkersMilewski: return "akersmilewski";
  }
  return "unknown";
}

DispersionModel::DispersionModel(Family family, std::map<std::string, double> params)
    : family_(family), params_(std::move(params)) {
  auto get = [this](const char* key, double fallback) {
    auto it = params_.find(key);
    return it == params_.end() ? fallback : it->second;
  };
  a_ = get("a", 0.0);
  b_ = get("b", 0.0);
  h_ = get("h", kInf);
  sigma_ = get("sigma", 0.0);

  for (const auto& [key, value] : params_) {
    if (std::isnan(value)) throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' is NaN");
  }
  switch (family_) {
    case Family::Kawahara:
      if (!std::isfinite(a_) || !std::isfinite(b_))
        throw Error(ErrorCode::InvalidArgument, "kawahara coefficients must be finite");
      break;
    case Family::Whitham:
    case Family::CapillaryWhitham:
      if (!(h_ > 0.0)) throw Error(ErrorCode::InvalidArgument, "depth h must be positive");
      if (!(sigma_ >= 0.0) || !std::isfinite(sigma_))
        throw Error(ErrorCode::InvalidArgument, "surface tension sigma must be finite and >= 0");
      break;
    case Family::AkersMilewski:
      if (!(sigma_ > 0.0) || !std::isfinite(sigma_))
        throw Error(ErrorCode::InvalidArgument, "akers-milewski sigma must be finite and > 0");
      break;
  }
}

DispersionModel DispersionModel::kawahara(double a, double b) {
  return DispersionModel(Family::Kawahara, {{"a", a}, {"b", b}});
}

DispersionModel DispersionModel::whitham(double depth) {
  return DispersionModel(Family::Whitham, {{"h", depth}});
}

DispersionModel DispersionModel::capillary_whitham(double depth, double sigma) {
  return DispersionModel(Family::CapillaryWhitham, {{"h", depth}, {"sigma", sigma}});
}

DispersionModel DispersionModel::akers_milewski(double sigma) {
  return DispersionModel(Family::AkersMilewski, {{"sigma", sigma}});
}

DispersionModel DispersionModel::parse(std::string_view spec) {
  const std::string text = lower(spec);
  const auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  name.erase(std::remove_if(name.begin(), name.end(), [](char c) { return c == '-' || c == '_'; }),
             name.end());

  std::map<std::string, double> params;
  if (colon != std::string::npos) {
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::Parse, "expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (params.count(key)) throw Error(ErrorCode::Parse, "duplicate parameter '" + key + "'");
      params[key] = parse_number(key, item.substr(eq + 1));
    }
  }

  auto require_only = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : params) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw Error(ErrorCode::Parse, "unknown parameter '" + key + "' for " + name);
    }
  };
  auto require = [&](const char* key) {
    if (!params.count(key))
      throw Error(ErrorCode::Parse, "missing parameter '" + std::string(key) + "' for " + name);
  };

  if (name == "kawahara") {
    require_only({"a", "b"});
    require("a");
    require("b");
    return DispersionModel(Family::Kawahara, params);
  }
  if (name == "whitham" || name == "capillarywhitham") {
    require_only({"h", "sigma"});
    if (!params.count("h")) params["h"] = kInf;
    if (params.count("sigma") || name == "capillarywhitham") {
      require("sigma");
      return DispersionModel(Family::CapillaryWhitham, params);
    }
    return DispersionModel(Family::Whitham, params);
  }
  if (name == "akersmilewski") {
    require_only({"sigma"});
    require("sigma");
    return DispersionModel(Family::AkersMilewski, params);
  }
  throw Error(ErrorCode::Parse, "unknown model family '" + name + "'");
}

Smoothness DispersionModel::smoothness() const noexcept {
  return family_ == Family::AkersMilewski ? Smoothness::DiscontinuousAtZero : Smoothness::Smooth;
}

double DispersionModel::param(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw Error(ErrorCode::InvalidArgument, "model has no parameter '" + key + "'");
  return it->second;
}

std::string DispersionModel::params_string() const {
  std::string out;
  for (const auto& [key, value] : params_) {
    if (!out.empty()) out += ';';
    out += key + "=" + format_number(value);
  }
  return out;
}

std::string DispersionModel::spec_string() const {
  std::string out(to_string(family_));
  char sep = ':';
  for (const auto& [key, value] : params_) {
    out += sep;
    out += key + "=" + format_number(value);
    sep = ',';
  }
  return out;
}

bool DispersionModel::deep() const noexcept { return std::isinf(h_); }

double DispersionModel::whitham_symbol(double k) const {
  const double surface = 1.0 + sigma_ * k * k;
  if (deep()) return surface / std::abs(k);
  const double x = k * h_;
  if (std::abs(x) < kSeriesThreshold) {
    const double x2 = x * x;
    return surface * h_ * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 15.0);
  }
  return surface * std::tanh(x) / k;
}

double DispersionModel::omega(double k) const {
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "wavenumber must be finite");
  switch (family_) {
    case Family::Kawahara: {
      const double k3 = k * k * k;
      return a_ * k3 + b_ * k3 * k * k;
    }
    case Family::Whitham:
    case Family::CapillaryWhitham:
      if (k == 0.0) return 0.0;
      if (deep()) return sgn(k) * std::sqrt(std::abs(k) * (1.0 + sigma_ * k * k));
      return k * std::sqrt(whitham_symbol(k));
    case Family::AkersMilewski: {
      if (k == 0.0) throw Error(ErrorCode::JumpDiscontinuity, "akers-milewski dispersion jumps at k = 0");
      const double s = 1.0 + sigma_ * std::abs(k);
      return sgn(k) * s * s;
    }
  }
  return 0.0;
}

double DispersionModel::phase_velocity(double k) const {
  if (k != 0.0) return omega(k) / k;
  switch (family_) {
    case Family::Kawahara: return 0.0;
    case Family::Whitham:
    case Family::CapillaryWhitham:
      if (deep()) throw Error(ErrorCode::NoLimit, "deep-water phase velocity diverges at k = 0");
      return std::sqrt(h_);
    case Family::AkersMilewski:
      throw Error(ErrorCode::JumpDiscontinuity, "akers-milewski phase velocity jumps at k = 0");
  }
  return 0.0;
}

double DispersionModel::central_difference(double k, int derivative) const {
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = std::max(1.0, std::abs(k));
  if (derivative == 1) {
    const double step = std::cbrt(eps) * scale;
    return (omega(k + step) - omega(k - step)) / (2.0 * step);
  }
  const double step = std::pow(eps, 0.25) * scale;
  return (omega(k + step) - 2.0 * omega(k) + omega(k - step)) / (step * step);
}

double DispersionModel::group_velocity(double k) const {
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "wavenumber must be finite");
  switch (family_) {
    case Family::Kawahara: {
      const double k2 = k * k;
      return 3.0 * a_ * k2 + 5.0 * b_ * k2 * k2;
    }
    case Family::AkersMilewski:
      if (k == 0.0) throw Error(ErrorCode::NotDifferentiable, "akers-milewski dispersion jumps at k = 0");
      return 2.0 * sigma_ * (1.0 + sigma_ * std::abs(k));
    case Family::Whitham:
    case Family::CapillaryWhitham: break;
  }
  if (deep() && k == 0.0)
    throw Error(ErrorCode::NotDifferentiable, "deep-water dispersion has a sqrt|k| cusp at k = 0");
  if (!deep() && std::abs(k * h_) < kSeriesThreshold) return central_difference(k, 1);

  // w = sqrt(f) with f = q g, q = 1 + sigma k^2, g = k tanh(kh) (or |k|); w' is even.
  const double x = std::abs(k);
  double g, dg;
  if (deep()) {
    g = x;
    dg = 1.0;
  } else {
    const double t = std::tanh(x * h_);
    g = x * t;
    dg = t + x * h_ * (1.0 - t * t);
  }
  const double q = 1.0 + sigma_ * x * x;
  const double dq = 2.0 * sigma_ * x;
  return (dq * g + q * dg) / (2.0 * std::sqrt(q * g));
}

double DispersionModel::second_derivative(double k) const {
  if (!std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "wavenumber must be finite");
  switch (family_) {
    case Family::Kawahara: return 6.0 * a_ * k + 20.0 * b_ * k * k * k;
    case Family::AkersMilewski:
      if (k == 0.0) throw Error(ErrorCode::NotDifferentiable, "akers-milewski dispersion jumps at k = 0");
      return 2.0 * sigma_ * sigma_ * sgn(k);
    case Family::Whitham:
    case Family::CapillaryWhitham: break;
  }
  if (deep() && k == 0.0)
    throw Error(ErrorCode::NotDifferentiable, "deep-water dispersion has a sqrt|k| cusp at k = 0");
  if (!deep() && std::abs(k * h_) < kSeriesThreshold) return central_difference(k, 2);

  const double x = std::abs(k);
  double g, dg, ddg;
  if (deep()) {
    g = x;
    dg = 1.0;
    ddg = 0.0;
  } else {
    const double t = std::tanh(x * h_);
    const double sech2 = 1.0 - t * t;
    g = x * t;
    dg = t + x * h_ * sech2;
    ddg = 2.0 * h_ * sech2 * (1.0 - x * h_ * t);
  }
  const double q = 1.0 + sigma_ * x * x;
  const double dq = 2.0 * sigma_ * x;
  const double ddq = 2.0 * sigma_;
  const double f = q * g;
  const double df = dq * g + q * dg;
  const double ddf = ddq * g + 2.0 * dq * dg + q * ddg;
  // w'' is odd in k.
  return sgn(k) * (2.0 * f * ddf - df * df) / (4.0 * f * std::sqrt(f));
}

}  // namespace stokes_spectra
