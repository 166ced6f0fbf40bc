#include "stokes_spectra/ffh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "stokes_spectra/error.hpp"
#include "stokes_spectra/qnewton.hpp"

namespace stokes_spectra {

Eigen::MatrixXcd assemble(const DispersionModel& model, const StokesWave& wave, double p, int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "truncation N must be >= 1");
  if (!std::isfinite(p)) throw Error(ErrorCode::InvalidArgument, "Floquet exponent must be finite");
  const int dim = 2 * N + 1;
  const double c = wave.speed;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = -N; n <= N; ++n) {
    const double K = n + p;
    if (K == 0.0 && model.smoothness() == Smoothness::DiscontinuousAtZero)
      throw Error(ErrorCode::JumpDiscontinuity, "mode n + p = 0 sits on the dispersion jump");
    const int i = n + N;
    M(i, i) = {0.0, model.omega(K) - c * K};
    for (int m = -N; m <= N; ++m) {
      const double u = wave.uhat(n - m);
      if (u != 0.0) M(i, m + N) += std::complex<double>(0.0, 2.0 * K * u);
    }
  }
  return M;
}

bool under_resolved(const StokesWave& wave, int N) {
  const int content = wave.numeric ? wave.bandwidth() : wave.order;
  return N < 2 * content + 4;
}

void sort_eigenvalues(std::vector<std::complex<double>>& values) {
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
  });
}

int default_truncation(double epsilon) { return epsilon <= 1e-2 ? 32 : 64; }

SpectrumSlice spectrum_slice(const DispersionModel& model, const StokesWave& wave, double p, int N,
                             const SliceOptions& options) {
  const Eigen::MatrixXcd M = assemble(model, wave, p, N);
  const bool polish = options.polish_floor >= 0.0 && wave.epsilon != 0.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(M, polish);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::EigFailure, "complex Schur iteration did not converge");

  SpectrumSlice slice;
  slice.p = p;
  slice.N = N;
  slice.epsilon = wave.epsilon;
  slice.under_resolved = under_resolved(wave, N);
  const auto& values = solver.eigenvalues();
  slice.eigenvalues.assign(values.data(), values.data() + values.size());

  if (polish) {
    for (Eigen::Index j = 0; j < values.size(); ++j) {
      if (std::abs(values[j].real()) <= options.polish_floor) continue;
      Eigen::VectorXcd v = solver.eigenvectors().col(j);
      Eigen::Index pin = 0;
      v.cwiseAbs().maxCoeff(&pin);
      v /= v[pin];
      const MatrixEigenPair r = refine_eigenpair(M, values[j], v, static_cast<int>(pin));
      if (r.converged && std::abs(r.lambda - values[j]) < 1e-6 * std::max(1.0, std::abs(values[j]))) {
        slice.eigenvalues[j] = r.lambda;
        ++slice.polished;
      }
    }
  }
  sort_eigenvalues(slice.eigenvalues);
  slice.max_re = -std::numeric_limits<double>::infinity();
  for (const auto& z : slice.eigenvalues) slice.max_re = std::max(slice.max_re, z.real());
  return slice;
}

Sweep sweep(const DispersionModel& model, const StokesWave& wave, const std::vector<double>& p_list, int N,
            double tol_unstable, int jobs, const SliceOptions& options) {
  Sweep out;
  out.slices.resize(p_list.size());
  detail::parallel_for(p_list.size(), jobs,
                       [&](std::size_t i) { out.slices[i] = spectrum_slice(model, wave, p_list[i], N, options); });

  for (const auto& s : out.slices)
    for (const auto& z : s.eigenvalues)
      if (std::abs(z.real()) > tol_unstable * std::max(1.0, std::abs(z))) out.unstable.push_back({s.p, z});
  return out;
}

}  // namespace stokes_spectra
