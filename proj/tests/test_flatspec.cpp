#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "stokes_spectra/flatspec.hpp"
#include "support.hpp"

using namespace stokes_spectra;
using test_support::code_of;

namespace {
const Collision* nearest(const std::vector<Collision>& all, double p0) {
  const Collision* best = nullptr;
  for (const auto& c : all)
    if (!best || std::abs(c.p0 - p0) < std::abs(best->p0 - p0)) best = &c;
  return best;
}
}  // namespace

TEST_CASE("flat eigenvalue") {
  for (const char* spec : {"kawahara:a=1,b=-0.25", "whitham:h=2", "whitham:h=inf,sigma=2.5", "akersmilewski:sigma=2"}) {
    auto m = DispersionModel::parse(spec);
    CHECK(std::abs(flat_eigenvalue(m, 1, 0.0)) < 1e-15);
    CHECK(std::abs(flat_eigenvalue(m, -1, 0.0)) < 1e-15);
  }
  auto k = DispersionModel::kawahara(1.0, -0.25);
  // w(1/2) = 1/8 - 1/128
  const auto l = flat_eigenvalue(k, 0, 0.5);
  CHECK(l.real() == 0.0);
  CHECK(l.imag() == doctest::Approx(0.125 - 0.25 / 32.0 - 0.75 * 0.5));
  CHECK(code_of([] { flat_eigenvalue(DispersionModel::akers_milewski(2.0), 0, 0.0); }) ==
        ErrorCode::JumpDiscontinuity);
}

TEST_CASE("collisions near the known resonances") {
  struct Case {
    const char* spec;
    int m;
    double p0, im;
  };
  // Values from hand root-finding of the resonance condition, Im lambda0 up to sign.
  for (const Case& c : {Case{"whitham:h=inf,sigma=2.5", 1, 0.2681, 0.0608}, Case{"akersmilewski:sigma=2", 1, 0.1464, 0.3536},
                        Case{"kawahara:a=1,b=-0.25", 2, 0.3675, 0.2277}, Case{"whitham:h=inf,sigma=0.25", 2, 0.1363, 0.2177}}) {
    CAPTURE(c.spec);
    auto model = DispersionModel::parse(c.spec);
    const auto all = find_collisions(model, c.m);
    REQUIRE(!all.empty());
    const Collision* hit = nearest(all, c.p0);
    CHECK(std::abs(hit->p0 - c.p0) < 1e-3);
    CHECK(std::abs(std::abs(hit->lambda0.imag()) - c.im) < 1e-3);
    CHECK(hit->krein_negative);
  }
}

TEST_CASE("collision invariants") {
  for (const char* spec : {"kawahara:a=1,b=-0.25", "whitham:h=inf,sigma=0.7", "whitham:h=1,sigma=0.1", "akersmilewski:sigma=2"}) {
    auto model = DispersionModel::parse(spec);
    for (int m : {1, 2, 3}) {
      const auto all = find_collisions(model, m);
      for (const auto& c : all) {
        CAPTURE(spec);
        CAPTURE(m);
        CHECK(c.m == m);
        CHECK(c.k2 == c.k1 + m);
        CHECK(c.p0 > 0.0);
        CHECK(c.p0 < 1.0);
        CHECK(c.lambda0.real() == 0.0);
        CHECK(std::abs(flat_eigenvalue(model, c.k1, c.p0) - flat_eigenvalue(model, c.k2, c.p0)) < 1e-10);
        CHECK(c.residual < 1e-10);
        // Conjugate branch: (-k2, -k1, 1 - p0).
        const bool mirrored = std::any_of(all.begin(), all.end(), [&](const Collision& o) {
          return o.k1 == -c.k2 - 1 && o.k2 == -c.k1 - 1 && std::abs(o.p0 - (1.0 - c.p0)) < 1e-9;
        });
        if (-c.k2 - 1 >= -20) CHECK(mirrored);
      }
      CHECK(std::is_sorted(all.begin(), all.end(), [](const Collision& a, const Collision& b) {
        return std::make_pair(a.k1, a.p0) < std::make_pair(b.k1, b.p0);
      }));
    }
  }
}

TEST_CASE("triad krein sign") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  for (const auto& c : find_collisions(model, 1))
    CHECK(c.krein_negative == ((c.k1 + c.p0) * (c.k2 + c.p0) < 0.0));
  for (const auto& c : find_collisions(model, 3)) CHECK_FALSE(c.krein_negative);
}

TEST_CASE("benjamin-feir resonant modes") {
  for (const char* spec : {"kawahara:a=-3,b=1", "whitham:h=2", "whitham:h=2,sigma=3"}) {
    CAPTURE(spec);
    CHECK(bf_resonant_modes(DispersionModel::parse(spec)) == std::vector<int>{-1, 0, 1});
  }
  // The jump at k = 0 removes the zero mode.
  CHECK(bf_resonant_modes(DispersionModel::akers_milewski(1.0)) == std::vector<int>{-1, 1});
}

TEST_CASE("search bounds") {
  auto model = DispersionModel::parse("whitham:h=inf,sigma=2.5");
  CollisionSearch narrow{-1, 0, 2000};
  for (const auto& c : find_collisions(model, 1, narrow)) {
    CHECK(c.k1 >= -1);
    CHECK(c.k1 <= 0);
  }
}
