#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stokes_spectra/ffh.hpp"
#include "stokes_spectra/hf_asymptotics.hpp"
#include "stokes_spectra/qnewton.hpp"
#include "support.hpp"

using namespace stokes_spectra;
using test_support::code_of;
using cd = std::complex<double>;

namespace {
IsolaModel isola(const DispersionModel& model, int m, double p0) {
  for (const auto& c : find_collisions(model, m))
    if (std::abs(c.p0 - p0) < 1e-3) return isola_for(model, c);
  FAIL("collision not found");
  return {};
}

double nearest_distance(const SpectrumSlice& s, cd z) {
  double best = 1e300;
  for (const auto& l : s.eigenvalues) best = std::min(best, std::abs(l - z));
  return best;
}
}  // namespace

TEST_CASE("flat eigenpair needs no iterations") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  const StokesWave flat = stokes_expand(model, 0.0, 2);
  const int N = 16;
  EigenPair guess;
  guess.pin = -1;
  guess.v = Eigen::VectorXcd::Zero(2 * N + 1);
  guess.v(guess.pin + N) = 1.0;
  guess.lambda = flat_eigenvalue(model, -1, 0.2681);
  const EigenPair r = refine(model, flat, 0.2681, guess, N);
  CHECK(r.iterations == 0);
  CHECK(r.residual < 1e-14);
  CHECK(r.lambda == guess.lambda);
}

TEST_CASE("perturbed guess returns to the same eigenpair") {
  auto model = DispersionModel::parse("akersmilewski:sigma=2");
  const IsolaModel iso = isola(model, 1, 0.1464);
  const double eps = 1e-3;
  const auto pairs = continue_in_epsilon(model, iso, std::numbers::pi / 2, {eps});
  REQUIRE(pairs.size() == 1);
  EigenPair guess = pairs[0];
  guess.lambda += 1e-6;
  const StokesWave w = validation_wave(model, eps);
  const EigenPair again = refine(model, w, guess.p, guess, guess.N);
  CHECK(std::abs(again.lambda - pairs[0].lambda) < 1e-11);
  CHECK(again.v(again.pin + again.N) == cd(1.0, 0.0));
  CHECK(again.residual < 1e-12);
}

TEST_CASE("continuation agrees with asymptotics and FFH") {
  struct Case {
    const char* spec;
    double p0;
  };
  for (const Case& k : {Case{"akersmilewski:sigma=2", 0.1464}, Case{"whitham:h=inf,sigma=2.5", 0.2681}}) {
    CAPTURE(k.spec);
    auto model = DispersionModel::parse(k.spec);
    const IsolaModel iso = isola(model, 1, k.p0);
    const double theta = iso.most_unstable_theta();
    const std::vector<double> eps{1e-4, 1e-3};
    const auto pairs = continue_in_epsilon(model, iso, theta, eps);
    REQUIRE(pairs.size() == 2);
    for (std::size_t j = 0; j < eps.size(); ++j) {
      const auto& e = pairs[j];
      CHECK(e.epsilon == eps[j]);
      CHECK(e.residual < 1e-12 * std::max(1.0, std::abs(e.lambda)));
      CHECK(e.v(e.pin + e.N) == cd(1.0, 0.0));
      CHECK(e.pin == iso.collision.k1);
      const auto a = iso.at(eps[j], theta);
      CHECK(e.p == a.p);
      CHECK(std::abs(e.lambda - a.lambda) < 10 * eps[j] * eps[j]);
      const auto slice = spectrum_slice(model, validation_wave(model, eps[j]), e.p, e.N);
      CHECK(nearest_distance(slice, e.lambda) < 1e-9);
    }
    // Growth rate at eps = 1e-3 within relative error 5 eps.
    const double asym = 1e-3 * iso.max_growth();
    CHECK(std::abs(pairs[1].lambda.real() - asym) <= 5e-3 * asym);
  }
}

TEST_CASE("zero amplitude continuation") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  const IsolaModel iso = isola(model, 1, 0.2681);
  const auto pairs = continue_in_epsilon(model, iso, 1.0, {0.0});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].lambda == iso.collision.lambda0);
  CHECK(pairs[0].p == iso.collision.p0);
  CHECK(pairs[0].residual < 1e-14);
}

TEST_CASE("dense matrix refinement") {
  Eigen::MatrixXcd M(3, 3);
  M << cd(1, 0), cd(0.1, 0), cd(0, 0), cd(0.1, 0), cd(2, 0), cd(0.1, 0), cd(0, 0), cd(0.1, 0), cd(3, 0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(3);
  v(1) = 1.0;
  const auto r = refine_eigenpair(M, cd(2.05, 0.0), v, 1);
  REQUIRE(r.converged);
  CHECK((M * r.v - r.lambda * r.v).cwiseAbs().maxCoeff() < 1e-12 * std::abs(r.lambda));
  CHECK(r.lambda.real() == doctest::Approx(2.0));
  CHECK(r.v(1) == cd(1.0, 0.0));
}

TEST_CASE("bad inputs") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  const StokesWave flat = stokes_expand(model, 0.0, 2);
  EigenPair g;
  g.pin = 0;
  g.v = Eigen::VectorXcd::Zero(5);
  CHECK(code_of([&] { refine(model, flat, 0.3, g, 4); }) == ErrorCode::InvalidArgument);
  g.pin = 9;
  g.v = Eigen::VectorXcd::Zero(9);
  CHECK(code_of([&] { refine(model, flat, 0.3, g, 4); }) == ErrorCode::InvalidArgument);
}
