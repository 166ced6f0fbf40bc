#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "stokes_spectra/harness.hpp"
#include "support.hpp"

using namespace stokes_spectra;
using test_support::code_of;

TEST_CASE("table rendering") {
  Table t({"name", "x", "n", "flag"});
  t.add({std::string("a,b"), 0.1, 3LL, true});
  t.add({std::string("say \"hi\""), -2.5e-17, -1LL, false});
  CHECK(t.size() == 2);
  CHECK(t.csv() == "name,x,n,flag\n\"a,b\",0.1,3,true\n\"say \"\"hi\"\"\",-2.5e-17,-1,false\n");
  const auto j = t.json();
  REQUIRE(j.is_array());
  CHECK(j[0]["name"] == "a,b");
  CHECK(j[0]["x"] == 0.1);
  CHECK(j[1]["n"] == -1);
  CHECK(j[1]["flag"] == false);
  CHECK(nlohmann::json::parse(t.render(Format::Json)) == j);
  CHECK(code_of([&] { t.add({1.0}); }) == ErrorCode::InvalidArgument);
  CHECK(parse_format("json") == Format::Json);
  CHECK(code_of([] { parse_format("xml"); }) == ErrorCode::Config);
}

TEST_CASE("round-trip doubles") {
  for (double x : {0.1, 1.0 / 3.0, 6.02214076e23, -1e-300, 0.0}) CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("power law fit") {
  std::vector<std::pair<double, double>> pts;
  for (double e : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2}) pts.emplace_back(e, 6.0 * e * e * e);
  const PowerLaw f = fit_power_law(pts);
  CHECK(f.slope == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(6.0).epsilon(1e-9));
  pts[2].second = 0.0;
  CHECK(code_of([&] { fit_power_law(pts); }) == ErrorCode::InvalidData);
  pts.resize(3);
  CHECK(code_of([&] { fit_power_law(pts); }) == ErrorCode::InvalidData);
}

TEST_CASE("hausdorff distance") {
  using cd = std::complex<double>;
  const std::vector<cd> a{{0, 0}, {1, 0}}, b{{0, 0}, {1, 0}, {1, 2}};
  CHECK(hausdorff(a, a) == 0.0);
  CHECK(hausdorff(a, b) == doctest::Approx(2.0));
  CHECK(hausdorff(b, a) == doctest::Approx(2.0));
}

TEST_CASE("collision selectors") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  const Collision c = select_collision(model, "m=1,p0=0.2681");
  CHECK(c.p0 == doctest::Approx(0.2681).epsilon(1e-3));
  CHECK(c.krein_negative);
  CHECK(select_collision(model, 1, 0.2681).p0 == c.p0);
  CHECK(code_of([&] { select_collision(model, "m=1,p0=0.5"); }) == ErrorCode::Config);
  CHECK(code_of([&] { select_collision(model, "p0=0.2"); }) == ErrorCode::Config);
  CHECK(code_of([&] { select_collision(model, "m=1,q=2"); }) == ErrorCode::Config);
}

TEST_CASE("registry") {
  const auto names = registry_names();
  for (const char* n : {"fig1-left", "fig1-right", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "compare-growth"})
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  CHECK(code_of([] { registry_config("fig9"); }) == ErrorCode::Config);
  auto bad = registry_config("fig1-left");
  bad.models = {"nonsense:x=1"};
  CHECK(code_of([&] { run(bad); }) == ErrorCode::Parse);
}

TEST_CASE("run writes a deterministic bundle") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "stokes_spectra_test_run";
  fs::remove_all(dir);
  auto config = registry_config("fig1-left");
  config.out_dir = dir.string();
  const RunResult first = run(config);
  config.out_dir.clear();
  const RunResult second = run(config);
  CHECK(first.summary == second.summary);
  CHECK(first.files == second.files);
  for (const char* f : {"config.json", "summary.json", "isola.csv", "qnewton.csv"}) CHECK(fs::exists(dir / f));
  std::ifstream in(dir / "isola.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "theta,Re,Im,p");
  std::ifstream cfg(dir / "config.json");
  const auto echoed = nlohmann::json::parse(cfg);
  CHECK(echoed["name"] == "fig1-left");
  fs::remove_all(dir);
}
