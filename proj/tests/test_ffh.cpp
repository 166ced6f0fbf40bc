#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "stokes_spectra/ffh.hpp"
#include "stokes_spectra/flatspec.hpp"
#include "stokes_spectra/hf_asymptotics.hpp"
#include "support.hpp"

using namespace stokes_spectra;
using test_support::code_of;
using cd = std::complex<double>;

namespace {
// Largest distance from a point of a to its nearest neighbour in b.
double one_sided(const std::vector<cd>& a, const std::vector<cd>& b) {
  double worst = 0.0;
  for (const auto& x : a) {
    double best = 1e300;
    for (const auto& y : b) best = std::min(best, std::abs(x - y));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<cd> unstable(const SpectrumSlice& s, double tol = 1e-10) {
  std::vector<cd> out;
  for (const auto& l : s.eigenvalues)
    if (std::abs(l.real()) > tol * std::max(1.0, std::abs(l))) out.push_back(l);
  return out;
}
}  // namespace

TEST_CASE("flat limit is the dispersion relation") {
  for (const char* spec : {"kawahara:a=1,b=-0.25", "whitham:h=2", "whitham:h=inf,sigma=2.5", "akersmilewski:sigma=2"}) {
    CAPTURE(spec);
    auto model = DispersionModel::parse(spec);
    const StokesWave flat = stokes_expand(model, 0.0, 4);
    for (double p : {0.5, 0.137}) {
      const auto s = spectrum_slice(model, flat, p, 16);
      std::vector<cd> expected;
      for (int k = -16; k <= 16; ++k) expected.push_back(flat_eigenvalue(model, k, p));
      sort_eigenvalues(expected);
      REQUIRE(s.eigenvalues.size() == expected.size());
      for (std::size_t j = 0; j < expected.size(); ++j)
        CHECK(std::abs(s.eigenvalues[j] - expected[j]) <= 1e-12 * std::max(1.0, std::abs(expected[j])));
      CHECK(s.max_re == 0.0);
    }
  }
}

TEST_CASE("matrix entries") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  const StokesWave w = stokes_expand(model, 1e-2, 3);
  const int N = 8;
  const double p = 0.3;
  const auto M = assemble(model, w, p, N);
  // Off-diagonal entries of row n: 2 i (n + p) uhat_{n - m}.
  for (int n : {-3, 0, 2})
    for (int m = -N; m <= N; ++m) {
      if (m == n) continue;
      const cd expect(0.0, 2.0 * (n + p) * w.uhat(n - m));
      CHECK(std::abs(M(n + N, m + N) - expect) < 1e-16);
    }
  CHECK(M(N, N).imag() == doctest::Approx(model.omega(p) - w.speed * p));
  CHECK(code_of([&] { assemble(DispersionModel::akers_milewski(2.0), stokes_expand(DispersionModel::akers_milewski(2.0), 0.0, 2), 0.0, 4); }) ==
        ErrorCode::JumpDiscontinuity);
}

TEST_CASE("conjugation symmetry") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  const double eps = 1e-2;
  const StokesWave w = validation_wave(model, eps);
  const int N = 32;
  for (double p : {0.27, 0.4, 0.81}) {
    CAPTURE(p);
    const auto a = spectrum_slice(model, w, p, N);
    // -p is the exact mirror of p.
    const auto b = spectrum_slice(model, w, -p, N);
    std::vector<cd> conj_b;
    for (const auto& l : b.eigenvalues) conj_b.push_back(std::conj(l));
    CHECK(one_sided(a.eigenvalues, conj_b) < 1e-10 * std::abs(a.eigenvalues.back()));
    // 1 - p relabels the modes by one; compare away from the truncation edge.
    const auto c = spectrum_slice(model, w, 1.0 - p, N);
    const double radius = 0.5 * std::min(std::abs(flat_eigenvalue(model, N - 1, p)),
                                         std::abs(flat_eigenvalue(model, -N + 1, p)));
    std::vector<cd> inner_a, conj_c;
    for (const auto& l : a.eigenvalues)
      if (std::abs(l) < radius) inner_a.push_back(l);
    for (const auto& l : c.eigenvalues) conj_c.push_back(std::conj(l));
    CHECK(one_sided(inner_a, conj_c) < 1e-10);
    CHECK(unstable(a).size() == unstable(c).size());
  }
}

TEST_CASE("truncation robustness") {
  struct Case {
    const char* spec;
    double eps;
    int m;
    double p0;
  };
  for (const Case& k : {Case{"whitham:h=inf,sigma=2.5", 1e-2, 1, 0.2681}, Case{"akersmilewski:sigma=2", 1e-2, 1, 0.1464},
                        Case{"kawahara:a=1,b=-0.25", 1e-2, 2, 0.3675}}) {
    CAPTURE(k.spec);
    auto model = DispersionModel::parse(k.spec);
    Collision col;
    for (const auto& c : find_collisions(model, k.m))
      if (std::abs(c.p0 - k.p0) < 1e-3) col = c;
    const IsolaModel iso = isola_for(model, col);
    const double p = iso.at(k.eps, iso.most_unstable_theta()).p;
    const StokesWave w = validation_wave(model, k.eps, 48);
    const auto a = spectrum_slice(model, w, p, 24);
    const auto b = spectrum_slice(model, w, p, 32);
    const auto ua = unstable(a), ub = unstable(b);
    REQUIRE(!ua.empty());
    CHECK(ua.size() == ub.size());
    CHECK(one_sided(ua, ub) < 1e-10);
    CHECK(std::abs(a.max_re - b.max_re) < 1e-10);
    // N and 2N.
    CHECK(std::abs(spectrum_slice(model, w, p, 48).max_re - a.max_re) < 1e-10);
  }
}

TEST_CASE("quartet isola is detected") {
  auto model = DispersionModel::kawahara(1.0, -0.25);
  Collision col;
  for (const auto& c : find_collisions(model, 2))
    if (std::abs(c.p0 - 0.3675) < 1e-3) col = c;
  const IsolaModel iso = isola_for(model, col);
  const double eps = 1e-3;
  const auto pt = iso.at(eps, iso.most_unstable_theta());
  const auto s = spectrum_slice(model, validation_wave(model, eps), pt.p, 24);
  cd best = s.eigenvalues.front();
  for (const auto& l : s.eigenvalues)
    if (std::abs(l - col.lambda0) < std::abs(best - col.lambda0)) best = l;
  CHECK(std::abs(best.real()) > 1e-10);
  CHECK(std::abs(best.real()) == doctest::Approx(eps * eps * iso.max_growth()).epsilon(0.05));
}

TEST_CASE("sweep") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  std::vector<double> ps;
  for (int j = 0; j < 21; ++j) ps.push_back(0.25 + 0.002 * j);
  const auto flat = sweep(model, stokes_expand(model, 0.0, 2), ps, 16);
  CHECK(flat.unstable.empty());
  CHECK(flat.slices.size() == ps.size());

  const StokesWave w = validation_wave(model, 1e-2);
  const auto serial = sweep(model, w, ps, 32, 1e-10, 1);
  const auto threaded = sweep(model, w, ps, 32, 1e-10, 3);
  REQUIRE(serial.slices.size() == ps.size());
  for (std::size_t j = 0; j < ps.size(); ++j) {
    CHECK(serial.slices[j].p == ps[j]);
    CHECK(serial.slices[j].eigenvalues == threaded.slices[j].eigenvalues);
  }
  CHECK(!serial.unstable.empty());
  for (const auto& u : serial.unstable) CHECK(std::abs(u.lambda.real()) > 1e-10);
}

TEST_CASE("resolution flag and default truncation") {
  auto model = DispersionModel::kawahara(1.0, -0.25);
  const StokesWave w = stokes_expand(model, 1e-3, 4);
  CHECK(under_resolved(w, 8));
  CHECK_FALSE(under_resolved(w, 12));
  CHECK(default_truncation(1e-2) == 32);
  CHECK(default_truncation(2e-2) == 64);
}
