#include "stokes_spectra/flatspec.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "stokes_spectra/error.hpp"
#include "stokes_spectra/hf_asymptotics.hpp"

namespace stokes_spectra {

namespace {

constexpr double kEndpointExclusion = 1e-8;
constexpr double kDegenerateCg = 1e-12;

}  // namespace

std::complex<double> flat_eigenvalue(const DispersionModel& model, int k, double p) {
  const double kk = k + p;
  return {0.0, model.omega(kk) - model.carrier_speed() * kk};
}

std::vector<Collision> find_collisions(const DispersionModel& model, int m, const CollisionSearch& search) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "resonance order m must be >= 1");
  if (search.k_min > search.k_max || search.grid < 2)
    throw Error(ErrorCode::InvalidArgument, "empty collision search window");

  const double c0 = model.carrier_speed();
  std::vector<Collision> out;
  std::vector<double> ps(search.grid - 1), rs(search.grid - 1);
  for (int i = 1; i < search.grid; ++i) ps[i - 1] = static_cast<double>(i) / search.grid;

  for (int k1 = search.k_min; k1 <= search.k_max; ++k1) {
    const int k2 = k1 + m;
    auto r = [&](double p) { return m * c0 - model.omega(k2 + p) + model.omega(k1 + p); };
    for (std::size_t i = 0; i < ps.size(); ++i) rs[i] = r(ps[i]);

    std::vector<double> roots;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (rs[i] == 0.0) {
        roots.push_back(ps[i]);
        continue;
      }
      if (i + 1 == ps.size() || rs[i + 1] == 0.0 || (rs[i] > 0) == (rs[i + 1] > 0)) continue;
      boost::uintmax_t iters = 200;
      auto [lo, hi] = boost::math::tools::toms748_solve(r, ps[i], ps[i + 1], rs[i], rs[i + 1],
                                                        boost::math::tools::eps_tolerance<double>(), iters);
      roots.push_back(std::abs(r(lo)) <= std::abs(r(hi)) ? lo : hi);
    }

    for (double p0 : roots) {
      if (p0 < kEndpointExclusion || p0 > 1.0 - kEndpointExclusion) continue;
      Collision c;
      c.k1 = k1;
      c.k2 = k2;
      c.m = m;
      c.p0 = p0;
      c.lambda0 = flat_eigenvalue(model, k1, p0);
      c.residual = std::abs(r(p0));
      c.cg1 = model.frame_group_velocity(k1 + p0);
      c.cg2 = model.frame_group_velocity(k2 + p0);
      c.degenerate = std::abs(c.cg2 - c.cg1) < kDegenerateCg * std::max(1.0, std::abs(c.cg1));
      if (m == 1) {
        c.krein_negative = (k1 + p0) * (k2 + p0) < 0.0;
      } else if (m == 2 && !c.degenerate) {
        try {
          const QuartetCoeffs q = quartet_coeffs(model, c);
          c.krein_negative = q.G / q.E > 0.0;
        } catch (const Error&) {
          c.krein_negative = false;
        }
      }
      out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end(), [](const Collision& a, const Collision& b) {
    return a.k1 != b.k1 ? a.k1 < b.k1 : a.p0 < b.p0;
  });
  return out;
}

std::vector<int> bf_resonant_modes(const DispersionModel& model, int k_min, int k_max) {
  const double c0 = model.carrier_speed();
  std::vector<int> out;
  for (int k = k_min; k <= k_max; ++k) {
    // Right-sided value at k = 0 so the Akers-Milewski jump gives w(0+) = 1.
    const double kk = k == 0 ? std::numeric_limits<double>::denorm_min() : static_cast<double>(k);
    const double lam = model.omega(kk) - c0 * kk;
    if (std::abs(lam) < 1e-12 * std::max(1.0, std::abs(model.omega(kk)))) out.push_back(k);
  }
  return out;
}

}  // namespace stokes_spectra
