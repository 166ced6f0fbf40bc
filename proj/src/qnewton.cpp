#include "stokes_spectra/qnewton.hpp"

#include <cmath>
#include <string>

#include "stokes_spectra/error.hpp"
#include "stokes_spectra/ffh.hpp"
#include "stokes_spectra/table.hpp"

namespace stokes_spectra {

namespace {

using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

Vec augmented_residual(const Mat& M, const Vec& x, int pin) {
  const Eigen::Index n = M.rows();
  const std::complex<double> lambda = x[n];
  Vec f(n + 1);
  f.head(n) = M * x.head(n) - lambda * x.head(n);
  f[n] = x[pin] - 1.0;
  return f;
}

Mat inverse_jacobian(const Mat& M, const Vec& x, int pin) {
  const Eigen::Index n = M.rows();
  Mat J = Mat::Zero(n + 1, n + 1);
  J.topLeftCorner(n, n) = M;
  J.topLeftCorner(n, n).diagonal().array() -= x[n];
  J.col(n).head(n) = -x.head(n);
  J(n, pin) = 1.0;
  return J.partialPivLu().inverse();
}

// Near the ends of an isola the two eigenvalues almost coalesce and Newton from
// phi1 + beta phi2 crawls. Swap in the dense eigenpair closest to the
// asymptotic eigenvalue when its pin component is usable.
void dense_seed(const Mat& M, EigenPair& guess) {
  Eigen::ComplexEigenSolver<Mat> solver(M, true);
  if (solver.info() != Eigen::Success) return;
  Eigen::Index best = 0;
  (solver.eigenvalues().array() - guess.lambda).abs().minCoeff(&best);
  Vec v = solver.eigenvectors().col(best);
  const std::complex<double> pin = v[guess.pin + guess.N];
  if (std::abs(pin) < 1e-3 * v.cwiseAbs().maxCoeff()) return;
  guess.v = v / pin;
  guess.lambda = solver.eigenvalues()[best];
}

}  // namespace

MatrixEigenPair refine_eigenpair(const Eigen::MatrixXcd& M, std::complex<double> lambda, Eigen::VectorXcd v,
                                 int pin_index, const NewtonOptions& options) {
  const Eigen::Index n = M.rows();
  if (v.size() != n || pin_index < 0 || pin_index >= n)
    throw Error(ErrorCode::InvalidArgument, "eigenvector guess does not match the matrix");

  Vec x(n + 1);
  x.head(n) = v;
  x[n] = lambda;
  Vec f = augmented_residual(M, x, pin_index);
  double res = f.lpNorm<Eigen::Infinity>();
  auto done = [&](double r) { return r <= options.tolerance * std::max(1.0, std::abs(x[n])); };

  Mat H;
  bool fresh = false;
  int it = 0;
  for (; it < options.max_iterations && !done(res); ++it) {
    if (!fresh && H.size() == 0) {
      H = inverse_jacobian(M, x, pin_index);
      fresh = true;
    }
    const Vec dx = -H * f;
    const Vec xn = x + dx;
    const Vec fn = augmented_residual(M, xn, pin_index);
    const double rn = fn.lpNorm<Eigen::Infinity>();
    if (!std::isfinite(rn) || rn >= res) {
      if (!fresh) {
        // Broyden step failed: rebuild the exact Jacobian here and retry.
        H = inverse_jacobian(M, x, pin_index);
        fresh = true;
        continue;
      }
      if (!std::isfinite(rn)) break;
    }
    const Vec df = fn - f;
    const Vec Hdf = H * df;
    const std::complex<double> denom = dx.dot(Hdf);
    if (std::abs(denom) > 0.0) H += (dx - Hdf) * (dx.adjoint() * H) / denom;
    x = xn;
    f = fn;
    res = rn;
    fresh = false;
  }
  return {x[n], x.head(n), res, it, done(res)};
}

EigenPair refine(const DispersionModel& model, const StokesWave& wave, double p, const EigenPair& guess, int N,
                 const NewtonOptions& options) {
  if (std::abs(guess.pin) > N) throw Error(ErrorCode::InvalidArgument, "pin mode outside the truncation");
  if (guess.v.size() != 2 * N + 1) throw Error(ErrorCode::InvalidArgument, "guess has the wrong truncation");
  const Eigen::MatrixXcd M = assemble(model, wave, p, N);
  const MatrixEigenPair r = refine_eigenpair(M, guess.lambda, guess.v, guess.pin + N, options);
  if (!r.converged)
    throw Error(ErrorCode::NewtonDiverged, "eigenpair residual " + format_double(r.residual) + " after " +
                                               std::to_string(r.iterations) + " iterations at epsilon " +
                                               format_double(wave.epsilon));
  EigenPair out;
  out.lambda = r.lambda;
  out.v = r.v;
  out.p = p;
  out.epsilon = wave.epsilon;
  out.residual = r.residual;
  out.iterations = r.iterations;
  out.N = N;
  out.pin = guess.pin;
  return out;
}

std::vector<EigenPair> continue_in_epsilon(const DispersionModel& model, const IsolaModel& isola, double theta,
                                           const std::vector<double>& eps_targets,
                                           const ContinuationOptions& options) {
  const Collision& col = isola.collision;
  const int N = options.N;
  if (std::abs(col.k1) > N || std::abs(col.k2) > N)
    throw Error(ErrorCode::InvalidArgument, "collision modes outside the truncation");
  for (std::size_t i = 0; i < eps_targets.size(); ++i) {
    if (!(eps_targets[i] >= 0.0) || (i > 0 && eps_targets[i] < eps_targets[i - 1]))
      throw Error(ErrorCode::InvalidArgument, "amplitude targets must be nonnegative and increasing");
  }

  // Leading eigenfunction phi1 + beta phi2, pinned on the k1 mode.
  EigenPair state;
  state.N = N;
  state.pin = col.k1;
  state.v = Eigen::VectorXcd::Zero(2 * N + 1);
  state.v[col.k1 + N] = 1.0;
  state.v[col.k2 + N] = std::polar(isola.rho, theta);
  state.lambda = col.lambda0;
  state.p = col.p0;

  // Step from `from` to amplitude eps; halve the step on divergence.
  auto step = [&](auto&& self, const EigenPair& from, double eps, int depth) -> EigenPair {
    const IsolaPoint target = isola.at(eps, theta);
    const StokesWave wave = validation_wave(model, eps, options.wave_modes);
    EigenPair guess = from;
    guess.lambda = from.lambda + (target.lambda - isola.at(from.epsilon, theta).lambda);
    try {
      return refine(model, wave, target.p, guess, N, options.newton);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NewtonDiverged) throw;
      if (from.epsilon == 0.0) {
        dense_seed(assemble(model, wave, target.p, N), guess);
        try {
          return refine(model, wave, target.p, guess, N, options.newton);
        } catch (const Error& again) {
          if (again.code() != ErrorCode::NewtonDiverged) throw;
        }
      }
      if (depth >= options.max_bisections) throw;
    }
    const double mid = from.epsilon > 0.0 ? std::sqrt(from.epsilon * eps) : 0.5 * eps;
    const EigenPair halfway = self(self, from, mid, depth + 1);
    return self(self, halfway, eps, depth + 1);
  };

  std::vector<EigenPair> out;
  for (double eps : eps_targets) {
    if (eps == 0.0) {
      EigenPair flat = state;
      flat.epsilon = 0.0;
      flat.residual = (assemble(model, validation_wave(model, 0.0, options.wave_modes), col.p0, N) * flat.v -
                       flat.lambda * flat.v)
                          .lpNorm<Eigen::Infinity>();
      out.push_back(flat);
      continue;
    }
    if (state.epsilon > 0.0 && eps > state.epsilon * options.max_ratio) {
      const int steps = static_cast<int>(std::ceil(std::log(eps / state.epsilon) / std::log(options.max_ratio)));
      const double start = state.epsilon;
      for (int s = 1; s < steps; ++s) state = step(step, state, start * std::pow(eps / start, double(s) / steps), 0);
    }
    state = step(step, state, eps, 0);
    out.push_back(state);
  }
  return out;
}

}  // namespace stokes_spectra
