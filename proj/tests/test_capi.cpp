// Exercises the shared library through its C header only.
#include <algorithm>
#include <cmath>
#include <vector>
#include <string>

#include "doctest.h"
#include "stokes_spectra.h"

namespace {
std::string text(const ss_result* r, size_t i) {
  size_t n = 0;
  REQUIRE(ss_result_text(r, i, nullptr, 0, &n) == SS_OK);
  std::string s(n, '\0');
  REQUIRE(ss_result_text(r, i, s.data(), s.size(), &n) == SS_OK);
  s.resize(n - 1);
  return s;
}

std::string name(const ss_result* r, size_t i) {
  char buf[64];
  size_t n = 0;
  REQUIRE(ss_result_name(r, i, buf, sizeof buf, &n) == SS_OK);
  return buf;
}

std::string last_error() {
  char buf[512];
  size_t n = 0;
  ss_last_error(buf, sizeof buf, &n);
  return buf;
}
}  // namespace

TEST_CASE("models through the C interface") {
  ss_model* m = nullptr;
  REQUIRE(ss_model_create("kawahara:a=1,b=-0.25", &m) == SS_OK);
  double w = 0.0;
  CHECK(ss_model_omega(m, 1.0, &w) == SS_OK);
  CHECK(w == doctest::Approx(0.75));
  CHECK(ss_model_group_velocity(m, 1.0, &w) == SS_OK);
  CHECK(w == doctest::Approx(1.75));

  size_t needed = 0;
  CHECK(ss_model_spec(m, nullptr, 0, &needed) == SS_OK);
  CHECK(needed > 1);
  char tiny[4];
  CHECK(ss_model_spec(m, tiny, sizeof tiny, &needed) == SS_BUFFER_TOO_SMALL);
  std::string spec(needed, '\0');
  CHECK(ss_model_spec(m, spec.data(), spec.size(), &needed) == SS_OK);
  CHECK(spec.rfind("kawahara", 0) == 0);
  ss_model_destroy(m);

  ss_model* bad = nullptr;
  const ss_status st = ss_model_create("nonsense", &bad);
  CHECK(st == SS_PARSE);
  CHECK(bad == nullptr);
  CHECK(ss_status_is_config(st));
  CHECK_FALSE(last_error().empty());
  CHECK(ss_model_create(nullptr, &bad) == SS_INVALID_ARGUMENT);
}

TEST_CASE("waves through the C interface") {
  ss_model* m = nullptr;
  REQUIRE(ss_model_create("whitham:h=inf,sigma=0.3", &m) == SS_OK);
  ss_wave* w = nullptr;
  REQUIRE(ss_wave_expand(m, 1e-2, 3, &w) == SS_OK);
  size_t n = 0;
  CHECK(ss_wave_coeffs(w, nullptr, 0, &n) == SS_OK);
  REQUIRE(n >= 4);
  std::vector<double> c(n);
  CHECK(ss_wave_coeffs(w, c.data(), c.size(), &n) == SS_OK);
  CHECK(c[1] == doctest::Approx(5e-3));
  double speed = 0.0;
  CHECK(ss_wave_speed(w, &speed) == SS_OK);
  CHECK(std::isfinite(speed));
  ss_wave_destroy(w);

  ss_model* wilton = nullptr;
  REQUIRE(ss_model_create("kawahara:a=-5,b=1", &wilton) == SS_OK);
  CHECK(ss_wave_expand(wilton, 1e-2, 2, &w) == SS_WILTON_RESONANCE);
  CHECK_FALSE(ss_status_is_config(SS_WILTON_RESONANCE));
  ss_model_destroy(wilton);
  ss_model_destroy(m);
}

TEST_CASE("computations through the C interface") {
  ss_model* m = nullptr;
  REQUIRE(ss_model_create("whitham:h=inf,sigma=2.5", &m) == SS_OK);
  ss_result* r = nullptr;
  const ss_search s = ss_search_default();
  CHECK(s.k_min == -20);
  CHECK(s.grid == 10000);
  REQUIRE(ss_collisions(m, 1, &s, SS_FORMAT_CSV, &r) == SS_OK);
  CHECK(ss_result_count(r) == 1);
  CHECK(name(r, 0) == "collisions.csv");
  CHECK(text(r, 0).rfind("family,params,m,k1,k2,p0,Im(lambda0),krein_negative\n", 0) == 0);
  ss_result_destroy(r);

  REQUIRE(ss_isola(m, 1, 0.2681, 1e-3, 8, SS_FORMAT_JSON, &r) == SS_OK);
  CHECK(text(r, 0).front() == '[');
  ss_result_destroy(r);

  REQUIRE(ss_spectrum(m, 1e-2, 0.26, 0.28, 3, 16, 1, 1, SS_FORMAT_CSV, &r) == SS_OK);
  CHECK(text(r, 0).rfind("p,Re,Im\n", 0) == 0);
  ss_result_destroy(r);

  const double eps[] = {1e-4, 1e-3};
  REQUIRE(ss_trace(m, 1, 0.2681, eps, 2, nullptr, 0, 0, 1, SS_FORMAT_CSV, &r) == SS_OK);
  const std::string trace = text(r, 0);
  CHECK(trace.rfind("epsilon,theta,p,Re,Im,residual,iters\n", 0) == 0);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 3);
  ss_result_destroy(r);

  CHECK(ss_isola(m, 1, 0.5, 1e-3, 8, SS_FORMAT_CSV, &r) == SS_CONFIG);
  CHECK(ss_result_name(nullptr, 0, nullptr, 0, nullptr) == SS_INVALID_ARGUMENT);
  ss_model_destroy(m);
}

TEST_CASE("benjamin-feir through the C interface") {
  ss_model* m = nullptr;
  REQUIRE(ss_model_create("kawahara:a=-3,b=1", &m) == SS_OK);
  ss_result* r = nullptr;
  REQUIRE(ss_bf(m, 1e-2, 16, SS_FORMAT_CSV, &r) == SS_OK);
  REQUIRE(ss_result_count(r) == 2);
  CHECK(text(r, 0).rfind("theta,branch,Re,Im,p\n", 0) == 0);
  CHECK(name(r, 1) == "constants.json");
  CHECK(text(r, 1).find("\"delta_bf\"") != std::string::npos);
  ss_result_destroy(r);
  ss_model_destroy(m);

  REQUIRE(ss_model_create("kawahara:a=1,b=0", &m) == SS_OK);
  CHECK(ss_bf(m, 1e-2, 16, SS_FORMAT_CSV, &r) == SS_STABLE);
  ss_model_destroy(m);
}

TEST_CASE("experiments through the C interface") {
  size_t n = 0;
  CHECK(ss_experiment_names(nullptr, 0, &n) == SS_OK);
  std::string names(n, '\0');
  CHECK(ss_experiment_names(names.data(), names.size(), &n) == SS_OK);
  CHECK(names.find("fig4\n") != std::string::npos);

  ss_result* r = nullptr;
  CHECK(ss_run_experiment("fig99", nullptr, nullptr, &r) == SS_CONFIG);
  CHECK(ss_run_experiment("fig1-left", "{\"bogus\": 1}", nullptr, &r) == SS_CONFIG);
  CHECK(ss_run_experiment("fig1-left", "not json", nullptr, &r) == SS_CONFIG);
  REQUIRE(ss_run_experiment("fig1-left", "{\"theta_points\": 8}", nullptr, &r) == SS_OK);
  CHECK(name(r, 0) == "summary.json");
  CHECK(ss_result_count(r) >= 3);
  ss_result_destroy(r);
}

TEST_CASE("status strings") {
  CHECK(std::string(ss_status_string(SS_OK)) == "ok");
  CHECK(std::string(ss_status_string(SS_NEWTON_DIVERGED)) == "newton-diverged");
  CHECK(std::string(ss_version()).size() > 0);
}
