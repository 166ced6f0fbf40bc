#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "stokes_spectra/error.hpp"
#include "stokes_spectra/stokes.hpp"

using namespace stokes_spectra;

TEST_CASE("second-order stokes coefficient") {
  // u2 = c2 cos 2x with c2 = 1 / (2 (c0 - c_p(2))), and the speed correction equals c2.
  for (const char* spec : {"kawahara:a=1,b=0", "whitham:h=2", "whitham:h=inf,sigma=0.25"}) {
    auto m = DispersionModel::parse(spec);
    const double c2 = 1.0 / (2.0 * (m.carrier_speed() - m.phase_velocity(2.0)));
    auto w = stokes_expand(m, 0.1, 2);
    CHECK(w.cos_coeffs[2][2] == doctest::Approx(c2));
    CHECK(w.c_series[1] == doctest::Approx(0.0));
    CHECK(w.c_series[2] == doctest::Approx(c2));
    CHECK(w.uhat(1) == doctest::Approx(0.05));
    CHECK(w.uhat(0) == 0.0);
  }
  // KdV carrier: c2 = 1/(2 (1 - 4)) = -1/6.
  auto kdv = stokes_expand(DispersionModel::kawahara(1.0, 0.0), 0.1, 2);
  CHECK(kdv.cos_coeffs[2][2] == doctest::Approx(-1.0 / 6.0));
  // Deep capillary-gravity with sigma = 1/4 has c_p(4) = c_p(1).
  CHECK_NOTHROW(stokes_expand(DispersionModel::parse("whitham:h=inf,sigma=0.25"), 0.1, 3));
  CHECK_THROWS_AS(stokes_expand(DispersionModel::parse("whitham:h=inf,sigma=0.25"), 0.1, 4), Error);
}

TEST_CASE("zero amplitude gives the flat state") {
  auto m = DispersionModel::whitham(1.0);
  auto w = stokes_expand(m, 0.0, 4);
  for (double x : w.fourier) CHECK(x == 0.0);
  CHECK(w.speed == m.carrier_speed());
  auto n = stokes_numeric(m, 0.0, 32);
  CHECK(n.speed == m.carrier_speed());
}

TEST_CASE("wilton ripple is rejected") {
  // c_p(n) = a n^2 + b n^4 with c_p(1) = c_p(2): a + b = 4a + 16b, a = -5b.
  auto m = DispersionModel::kawahara(-5.0, 1.0);
  CHECK_THROWS_AS(stokes_expand(m, 0.01, 2), Error);
  try {
    stokes_expand(m, 0.01, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WiltonResonance);
  }
}

TEST_CASE("expansion residual shrinks with order") {
  auto m = DispersionModel::parse("whitham:h=inf,sigma=0.3");
  for (int order : {2, 3, 4}) {
    auto a = stokes_expand(m, 1e-2, order);
    auto b = stokes_expand(m, 5e-3, order);
    const double ra = traveling_wave_residual(m, a.fourier, a.speed);
    const double rb = traveling_wave_residual(m, b.fourier, b.speed);
    CAPTURE(order);
    CHECK(std::log2(ra / rb) == doctest::Approx(order + 1).epsilon(0.05));
  }
}

TEST_CASE("numeric wave solves the galerkin system and matches the expansion") {
  auto m = DispersionModel::kawahara(1.0, -0.25);
  const double eps = 1e-2;
  auto n = stokes_numeric(m, eps, 32);
  auto e = stokes_expand(m, eps, 4);
  CHECK(n.uhat(1) == doctest::Approx(eps / 2));
  CHECK(traveling_wave_residual(m, n.fourier, n.speed) < 1e-10);
  CHECK(std::abs(n.speed - e.speed) < 10 * std::pow(eps, 4));
  for (int k = 2; k <= 4; ++k) CHECK(std::abs(n.uhat(k) - e.uhat(k)) < 10 * std::pow(eps, 4));
}

TEST_CASE("numeric wave at larger amplitude") {
  auto m = DispersionModel::whitham(1.0);
  auto n = stokes_numeric(m, 0.1, 48);
  CHECK(traveling_wave_residual(m, n.fourier, n.speed) < 1e-11);
}

TEST_CASE("json layout") {
  auto w = stokes_expand(DispersionModel::whitham(std::numeric_limits<double>::infinity()), 0.01, 3);
  auto j = nlohmann::json::parse(to_json(w));
  CHECK(j["family"] == "whitham");
  CHECK(j["params"]["h"] == "inf");
  CHECK(j["coeffs"].size() == 4);
  CHECK(j["coeffs"][1].get<double>() == doctest::Approx(0.005));
}
