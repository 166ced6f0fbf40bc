#include "stokes_spectra/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include "json.hpp"

#include "stokes_spectra/error.hpp"

namespace stokes_spectra {

namespace {

constexpr double kWiltonTolerance = 1e-10;

// Symmetric access into a nonnegative-index coefficient list.
double at(std::span<const double> v, int n) {
  const auto i = static_cast<std::size_t>(std::abs(n));
  return i < v.size() ? v[i] : 0.0;
}

// (a * b)_n for even sequences stored by nonnegative index.
double convolve(std::span<const double> a, std::span<const double> b, int n) {
  const int ma = static_cast<int>(a.size()) - 1;
  double sum = 0.0;
  for (int m = -ma; m <= ma; ++m) sum += at(a, m) * at(b, n - m);
  return sum;
}

// Order-j quadratic forcing sum_{a+b=j} (u_a u_b)_n.
double quadratic_forcing(const std::vector<std::vector<double>>& orders, int j, int n) {
  double sum = 0.0;
  for (int a = 1; a < j; ++a) sum += convolve(orders[a], orders[j - a], n);
  return sum;
}

}  // namespace

double StokesWave::uhat(int n) const noexcept { return at(fourier, n); }

int StokesWave::bandwidth() const noexcept {
  const double floor = 1e-17 * std::max(std::abs(uhat(1)), 1e-300);
  int last = 0;
  for (int n = 1; n < static_cast<int>(fourier.size()); ++n)
    if (std::abs(fourier[n]) > floor) last = n;
  return last;
}

StokesWave stokes_expand(const DispersionModel& model, double epsilon, int order) {
  if (order < 2) throw Error(ErrorCode::InvalidArgument, "expansion order must be >= 2");
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw Error(ErrorCode::InvalidArgument, "amplitude must be finite and >= 0");

  const double c0 = model.carrier_speed();
  std::vector<double> detuning(order + 1, 0.0);  // c0 - c_p(n)
  for (int n = 2; n <= order; ++n) {
    detuning[n] = c0 - model.phase_velocity(n);
    if (std::abs(detuning[n]) < kWiltonTolerance)
      throw Error(ErrorCode::WiltonResonance,
                  "harmonic " + std::to_string(n) + " travels at the carrier phase speed");
  }

  // orders[j][n] = Fourier coefficient of e^{inx} in u_j.
  std::vector<std::vector<double>> orders(order + 1);
  std::vector<double> c(order + 1, 0.0);
  c[0] = c0;
  orders[1] = {0.0, 0.5};
  for (int j = 2; j <= order; ++j) {
    c[j - 1] = quadratic_forcing(orders, j, 1) / orders[1][1];
    orders[j].assign(j + 1, 0.0);
    for (int n = 2; n <= j; ++n) {
      double rhs = quadratic_forcing(orders, j, n);
      for (int i = 1; i < j; ++i) rhs -= c[i] * at(orders[j - i], n);
      orders[j][n] = rhs / detuning[n];
    }
  }
  c[order] = quadratic_forcing(orders, order + 1, 1) / orders[1][1];

  StokesWave wave{model};
  wave.epsilon = epsilon;
  wave.order = order;
  wave.c_series = c;
  wave.cos_coeffs.resize(order + 1);
  wave.fourier.assign(order + 1, 0.0);
  double power = 1.0;
  for (int j = 1; j <= order; ++j) {
    power *= epsilon;
    auto& row = wave.cos_coeffs[j];
    row.assign(j + 1, 0.0);
    for (int n = 1; n <= j; ++n) {
      row[n] = 2.0 * orders[j][n];
      wave.fourier[n] += power * orders[j][n];
    }
  }
  double speed = 0.0;
  for (int j = order; j >= 0; --j) speed = speed * epsilon + c[j];
  wave.speed = speed;
  return wave;
}

namespace {

struct GalerkinSolve {
  std::vector<double> uhat;
  double speed;
  double residual;
  bool converged;
};

GalerkinSolve galerkin_newton(const DispersionModel& model, std::vector<double> uhat, double speed,
                              const NumericStokesOptions& options) {
  const int modes = static_cast<int>(uhat.size()) - 1;
  std::vector<double> cp(modes + 1, 0.0);
  for (int n = 1; n <= modes; ++n) cp[n] = model.phase_velocity(n);

  auto residual = [&](const std::vector<double>& u, double c) {
    Eigen::VectorXd f(modes);
    for (int n = 1; n <= modes; ++n) {
      double sq = 0.0;
      for (int m = n - modes; m <= modes; ++m) sq += at(u, m) * at(u, n - m);
      f(n - 1) = (c - cp[n]) * u[n] - sq;
    }
    return f;
  };

  Eigen::VectorXd f = residual(uhat, speed);
  double norm = f.lpNorm<Eigen::Infinity>();
  for (int iter = 0; iter < options.max_iterations && norm > 1e-3 * options.tolerance; ++iter) {
    // Unknowns: uhat_2..uhat_modes, then c.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(modes, modes);
    for (int n = 1; n <= modes; ++n) {
      for (int k = 2; k <= modes; ++k) {
        const int in = n - k, ip = n + k;
        double d = -2.0 * ((std::abs(in) <= modes ? at(uhat, in) : 0.0) +
                           (ip <= modes ? at(uhat, ip) : 0.0));
        if (n == k) d += speed - cp[n];
        jac(n - 1, k - 2) = d;
      }
      jac(n - 1, modes - 1) = uhat[n];
    }
    const Eigen::VectorXd step = jac.partialPivLu().solve(-f);
    if (!step.allFinite()) break;
    for (int k = 2; k <= modes; ++k) uhat[k] += step(k - 2);
    speed += step(modes - 1);
    const Eigen::VectorXd next = residual(uhat, speed);
    const double next_norm = next.lpNorm<Eigen::Infinity>();
    f = next;
    if (next_norm >= norm && next_norm < options.tolerance) {
      norm = next_norm;
      break;
    }
    norm = next_norm;
  }
  return {std::move(uhat), speed, norm, norm < options.tolerance};
}

std::vector<double> expansion_guess(const DispersionModel& model, double epsilon, int modes,
                                    double& speed) {
  StokesWave guess{model};
  for (int order : {4, 3, 2}) {
    if (order > modes) continue;
    try {
      guess = stokes_expand(model, epsilon, order);
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WiltonResonance || order == 2) throw;
    }
  }
  std::vector<double> u(modes + 1, 0.0);
  for (int n = 0; n <= modes; ++n) u[n] = guess.uhat(n);
  speed = guess.speed;
  return u;
}

}  // namespace

StokesWave stokes_numeric(const DispersionModel& model, double epsilon, int n_modes,
                          const NumericStokesOptions& options) {
  if (n_modes < 16) throw Error(ErrorCode::InvalidArgument, "numeric Stokes waves need n_modes >= 16");
  if (!std::isfinite(epsilon) || epsilon < 0.0)
    throw Error(ErrorCode::InvalidArgument, "amplitude must be finite and >= 0");

  StokesWave wave{model};
  wave.epsilon = epsilon;
  wave.order = n_modes;
  wave.numeric = true;
  wave.c_series = {model.carrier_speed()};
  wave.fourier.assign(n_modes + 1, 0.0);
  wave.speed = model.carrier_speed();
  if (epsilon == 0.0) return wave;

  // Direct Newton from the expansion; fall back to stepping epsilon up from
  // a fraction of the target when that fails.
  double speed = 0.0;
  GalerkinSolve solve{expansion_guess(model, epsilon, n_modes, speed), 0.0, 0.0, false};
  solve = galerkin_newton(model, solve.uhat, speed, options);
  for (int steps = 2; !solve.converged && steps <= 64; steps *= 2) {
    double s = 0.0;
    std::vector<double> u = expansion_guess(model, epsilon / steps, n_modes, s);
    solve = galerkin_newton(model, u, s, options);
    for (int i = 2; i <= steps && solve.converged; ++i) {
      const double eps_i = epsilon * i / steps;
      std::vector<double> next = solve.uhat;
      for (auto& x : next) x *= static_cast<double>(i) / (i - 1);
      next[0] = 0.0;
      next[1] = 0.5 * eps_i;
      solve = galerkin_newton(model, next, solve.speed, options);
    }
  }
  if (!solve.converged)
    throw Error(ErrorCode::ContinuationFailure,
                "Galerkin Newton stalled at residual " + std::to_string(solve.residual));

  wave.fourier = std::move(solve.uhat);
  wave.speed = solve.speed;
  return wave;
}

StokesWave validation_wave(const DispersionModel& model, double epsilon, int n_modes) {
  if (epsilon <= 1e-3) {
    try {
      return stokes_expand(model, epsilon, 4);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WiltonResonance) throw;
    }
  }
  return stokes_numeric(model, epsilon, n_modes);
}

double traveling_wave_residual(const DispersionModel& model, std::span<const double> uhat, double c,
                               int grid) {
  const int modes = static_cast<int>(uhat.size()) - 1;
  const int top = 2 * modes;
  // R_n = i r_n with r_n = (w(n) - c n) uhat_n + n (u^2)_n, so R(x) = -2 sum r_n sin(nx).
  std::vector<double> r(top + 1, 0.0);
  for (int n = 1; n <= top; ++n) r[n] = (model.omega(n) - c * n) * at(uhat, n) + n * convolve(uhat, uhat, n);
  const int points = std::max(grid, 4 * top + 4);
  double sup = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = 2.0 * std::numbers::pi * i / points;
    double value = 0.0;
    for (int n = 1; n <= top; ++n) value -= 2.0 * r[n] * std::sin(n * x);
    sup = std::max(sup, std::abs(value));
  }
  return sup;
}

std::string to_json(const StokesWave& wave) {
  nlohmann::json j;
  j["family"] = std::string(to_string(wave.model.family()));
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [key, value] : wave.model.params()) {
    if (std::isinf(value))
      params[key] = "inf";
    else
      params[key] = value;
  }
  j["params"] = params;
  j["epsilon"] = wave.epsilon;
  j["c"] = wave.speed;
  j["coeffs"] = wave.fourier;
  return j.dump();
}

}  // namespace stokes_spectra
