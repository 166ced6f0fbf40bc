#include "stokes_spectra/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <numbers>
#include <sstream>

#include "parallel.hpp"
#include "stokes_spectra/error.hpp"

namespace stokes_spectra {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::Config, "bad value '" + text + "' for selector key '" + key + "'");
}

std::string slug(const DispersionModel& model) { return std::string(to_string(model.family())); }

}  // namespace

// ---------------------------------------------------------------- tables

Table collisions_table(const DispersionModel& model, const std::vector<Collision>& collisions) {
  Table t({"family", "params", "m", "k1", "k2", "p0", "Im(lambda0)", "krein_negative"});
  for (const auto& c : collisions)
    t.add({std::string(to_string(model.family())), model.params_string(), (long long)c.m, (long long)c.k1,
           (long long)c.k2, c.p0, c.lambda0.imag(), c.krein_negative});
  return t;
}

Table isola_table(const IsolaModel& isola, double epsilon, int n_theta) {
  Table t({"theta", "Re", "Im", "p"});
  for (const auto& pt : isola.sample(epsilon, n_theta)) t.add({pt.theta, pt.lambda.real(), pt.lambda.imag(), pt.p});
  return t;
}

Table bf_table(const std::vector<LemniscatePoint>& curve) {
  Table t({"theta", "branch", "Re", "Im", "p"});
  for (const auto& pt : curve) t.add({pt.theta, (long long)pt.branch, pt.lambda.real(), pt.lambda.imag(), pt.p});
  return t;
}

nlohmann::json bf_constants_json(const LemniscateModel& lm) {
  nlohmann::json j = {{"U", lm.U}, {"V", lm.V}, {"delta_bf", lm.delta_bf}, {"cg1", lm.cg1}, {"r1", lm.r1}};
  j["unstable"] = lm.unstable;
  if (lm.am_mode) {
    j["am_mode"] = true;
    if (lm.gamma_fitted) j["gamma"] = lm.gamma;
  }
  return j;
}

Table spectrum_table(const Sweep& sweep, bool unstable_only) {
  Table t({"p", "Re", "Im"});
  if (unstable_only) {
    for (const auto& u : sweep.unstable) t.add({u.p, u.lambda.real(), u.lambda.imag()});
  } else {
    for (const auto& s : sweep.slices)
      for (const auto& z : s.eigenvalues) t.add({s.p, z.real(), z.imag()});
  }
  return t;
}

Table trace_table(const std::vector<std::pair<double, std::vector<EigenPair>>>& traces) {
  Table t({"epsilon", "theta", "p", "Re", "Im", "residual", "iters"});
  for (const auto& [theta, pairs] : traces)
    for (const auto& e : pairs)
      t.add({e.epsilon, theta, e.p, e.lambda.real(), e.lambda.imag(), e.residual, (long long)e.iterations});
  return t;
}

Table growth_table(const DispersionModel& model, const GrowthReport& report) {
  Table t({"model", "kind", "k1", "k2", "p0", "growth"});
  const std::string spec = model.spec_string();
  for (const auto& c : report.triads)
    t.add({spec, std::string("triad"), (long long)c.k1, (long long)c.k2, c.p0, triad_isola(model, c).max_growth()});
  for (const auto& q : report.quartets)
    t.add({spec, std::string("quartet"), (long long)q.collision.k1, (long long)q.collision.k2, q.collision.p0,
           q.growth});
  if (report.bf_unstable) t.add({spec, std::string("bf"), -1LL, 1LL, 0.0, report.bf_growth});
  return t;
}

nlohmann::json growth_json(const GrowthReport& report) {
  double quartet_max = 0.0;
  for (const auto& q : report.quartets) quartet_max = std::max(quartet_max, q.growth);
  nlohmann::json j = {{"verdict", report.verdict},
                      {"triads", report.triads.size()},
                      {"quartets", report.quartets.size()},
                      {"quartet_max_growth", quartet_max},
                      {"bf_unstable", report.bf_unstable},
                      {"bf_growth", report.bf_growth},
                      {"bf_growth_times_delta", report.bf_growth_delta}};
  if (!report.bf_available) j["bf_note"] = report.bf_note;
  return j;
}

// ------------------------------------------------------------ selection

Collision select_collision(const DispersionModel& model, int m, double p0_hint, const CollisionSearch& search) {
  const auto all = find_collisions(model, m, search);
  const Collision* best = nullptr;
  auto key = [&](const Collision& c) { return std::make_pair(!c.krein_negative, std::abs(c.p0 - p0_hint)); };
  for (const auto& c : all) {
    if (std::abs(c.p0 - p0_hint) > 1e-2) continue;
    if (!best || key(c) < key(*best)) best = &c;
  }
  if (!best)
    throw Error(ErrorCode::Config, "no m = " + std::to_string(m) + " collision within 1e-2 of p0 = " +
                                       format_double(p0_hint) + " for " + model.spec_string());
  return *best;
}

Collision select_collision(const DispersionModel& model, const std::string& selector, const CollisionSearch& search) {
  int m = 0;
  double p0 = -1.0;
  std::optional<int> k1;
  for (const auto& part : split(selector, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Config, "selector entry '" + part + "' is not key=value");
    const std::string key = part.substr(0, eq), value = part.substr(eq + 1);
    if (key == "m")
      m = static_cast<int>(parse_double(key, value));
    else if (key == "p0")
      p0 = parse_double(key, value);
    else if (key == "k1")
      k1 = static_cast<int>(parse_double(key, value));
    else
      throw Error(ErrorCode::Config, "unknown selector key '" + key + "'");
  }
  if (m < 1) throw Error(ErrorCode::Config, "selector needs m >= 1");
  if (p0 >= 0.0 && !k1) return select_collision(model, m, p0, search);
  for (const auto& c : find_collisions(model, m, search)) {
    if (k1 && c.k1 != *k1) continue;
    if (p0 >= 0.0 && std::abs(c.p0 - p0) > 1e-2) continue;
    return c;
  }
  throw Error(ErrorCode::Config, "selector '" + selector + "' matches no collision");
}

// --------------------------------------------------------------- metrics

double hausdorff(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<cd>& x, const std::vector<cd>& y) {
    double worst = 0.0;
    for (const auto& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double distance_to_curve(cd z, const std::vector<LemniscatePoint>& curve) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    best = std::min(best, std::abs(z - curve[i].lambda));
    // Segment to the next point on the same branch.
    if (i + 1 < curve.size() && curve[i + 1].branch == curve[i].branch) {
      const cd a = curve[i].lambda, d = curve[i + 1].lambda - a;
      const double len2 = std::norm(d);
      if (len2 > 0.0) {
        const double t = std::clamp(((z - a) * std::conj(d)).real() / len2, 0.0, 1.0);
        best = std::min(best, std::abs(z - (a + t * d)));
      }
    }
  }
  return best;
}

PowerLaw fit_power_law(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 4) throw Error(ErrorCode::InvalidData, "power-law fit needs at least 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [e, err] : pairs) {
    if (!(e > 0.0) || !(err > 0.0) || !std::isfinite(e) || !std::isfinite(err))
      throw Error(ErrorCode::InvalidData, "power-law fit needs positive finite data");
    const double x = std::log(e), y = std::log(err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pairs.size());
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw Error(ErrorCode::InvalidData, "power-law fit needs distinct amplitudes");
  const double slope = (n * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / n;
  return {slope, std::exp(intercept)};
}

// -------------------------------------------------------------- registry

nlohmann::json ExperimentConfig::to_json() const {
  return {{"name", name},
          {"models", models},
          {"selectors", selectors},
          {"epsilons", epsilons},
          {"isola_epsilon", isola_epsilon},
          {"theta_points", theta_points},
          {"N", N},
          {"jobs", jobs}};
}

std::vector<std::string> registry_names() {
  return {"fig1-left", "fig1-right", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "compare-growth"};
}

ExperimentConfig registry_config(const std::string& name) {
  ExperimentConfig c;
  c.name = name;
  const std::vector<double> error_eps = {1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  std::vector<double> sheet_eps;
  for (int i = 1; i <= 16; ++i) sheet_eps.push_back(1e-2 * i / 16);

  if (name == "fig1-left") {
    c.models = {"whitham:h=inf,sigma=2.5"};
    c.selectors = {"m=1,p0=0.2681"};
    c.epsilons = {1e-3};
  } else if (name == "fig1-right") {
    c.models = {"akersmilewski:sigma=2"};
    c.selectors = {"m=1,p0=0.1464"};
    c.epsilons = {1e-3};
  } else if (name == "fig2") {
    c.models = {"whitham:h=inf,sigma=2.5"};
    c.selectors = {"m=1,p0=0.2681"};
    c.epsilons = sheet_eps;
  } else if (name == "fig3") {
    c.models = {"kawahara:a=1,b=-0.25", "whitham:h=inf,sigma=0.25"};
    c.selectors = {"m=2,p0=0.3675", "m=2,p0=0.1363"};
    c.epsilons = sheet_eps;
  } else if (name == "fig4") {
    c.models = {"kawahara:a=1,b=-0.25"};
    c.selectors = {"m=2,p0=0.3675"};
    c.epsilons = error_eps;
    c.isola_epsilon = 1e-3;
  } else if (name == "fig5") {
    c.models = {"whitham:h=inf,sigma=0.25"};
    c.selectors = {"m=2,p0=0.1363"};
    c.epsilons = error_eps;
    c.isola_epsilon = 1e-4;
  } else if (name == "fig6") {
    c.models = {"kawahara:a=-3,b=1", "whitham:h=2", "whitham:h=2,sigma=3"};
    c.selectors = {"bf", "bf", "bf"};
    c.epsilons = {1e-2};
  } else if (name == "fig7") {
    c.models = {"akersmilewski:sigma=1"};
    c.selectors = {"bf"};
    c.epsilons = {4e-3, 1e-2, 2e-2};
    c.isola_epsilon = 1e-2;
  } else if (name == "compare-growth") {
    c.models = {"whitham:h=inf,sigma=0.25", "whitham:h=inf,sigma=2.5", "kawahara:a=1,b=-0.25",
                "kawahara:a=-3,b=1",        "whitham:h=2",             "whitham:h=2,sigma=3",
                "akersmilewski:sigma=1"};
    c.selectors.assign(c.models.size(), "auto");
    c.epsilons = {1e-3};
  } else {
    std::string known;
    for (const auto& n : registry_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::Config, "unknown experiment '" + name + "' (known: " + known + ")");
  }
  if (c.isola_epsilon == 0.0) c.isola_epsilon = c.epsilons.back();
  return c;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::Config, what);
}

std::vector<double> theta_grid(int n) {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = kTwoPi * j / n;
  return out;
}

ContinuationOptions continuation_options(const ExperimentConfig& c) {
  ContinuationOptions o;
  if (c.N > 0) o.N = c.N;
  return o;
}

// One continuation per theta, all to the same amplitude list.
std::vector<std::vector<EigenPair>> trace_thetas(const DispersionModel& model, const IsolaModel& iso,
                                                 const std::vector<double>& thetas, const std::vector<double>& eps,
                                                 const ContinuationOptions& options, int jobs) {
  std::vector<std::vector<EigenPair>> out(thetas.size());
  detail::parallel_for(thetas.size(), jobs,
                       [&](std::size_t i) { out[i] = continue_in_epsilon(model, iso, thetas[i], eps, options); });
  return out;
}

void isola_experiment(const ExperimentConfig& c, RunResult& r) {
  require(c.models.size() == 1 && c.selectors.size() == 1, c.name + " takes one model and one selector");
  const auto model = DispersionModel::parse(c.models[0]);
  const Collision col = select_collision(model, c.selectors[0]);
  const IsolaModel iso = isola_for(model, col);
  const double eps = c.isola_epsilon;
  const auto thetas = theta_grid(c.theta_points);
  const auto traces = trace_thetas(model, iso, thetas, {eps}, continuation_options(c), c.jobs);

  std::vector<std::pair<double, std::vector<EigenPair>>> rows;
  std::vector<cd> numeric, asymptotic;
  double numeric_max = 0.0;
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    rows.emplace_back(thetas[i], traces[i]);
    numeric.push_back(traces[i].back().lambda);
    asymptotic.push_back(iso.at(eps, thetas[i]).lambda);
    numeric_max = std::max(numeric_max, traces[i].back().lambda.real());
  }
  r.files.emplace_back("isola.csv", isola_table(iso, eps, 256).csv());
  r.files.emplace_back("qnewton.csv", trace_table(rows).csv());

  const double h = hausdorff(asymptotic, numeric);
  const double scale = std::pow(eps, iso.order + 1);
  r.summary["model"] = model.spec_string();
  r.summary["collision"] = {{"k1", col.k1}, {"k2", col.k2}, {"m", col.m}, {"p0", col.p0},
                            {"Im_lambda0", col.lambda0.imag()}, {"krein_negative", col.krein_negative}};
  r.summary["epsilon"] = eps;
  r.summary["asymptotic_max_growth"] = std::pow(eps, iso.order) * iso.max_growth();
  r.summary["numeric_max_growth"] = numeric_max;
  r.summary["hausdorff"] = h;
  r.summary["hausdorff_over_eps_order_plus_1"] = h / scale;
  if (iso.order == 1) r.summary["pass_hausdorff_10eps2"] = h <= 10.0 * eps * eps;
}

void quartet_experiment(const ExperimentConfig& c, RunResult& r) {
  isola_experiment(c, r);
  const auto model = DispersionModel::parse(c.models[0]);
  const Collision col = select_collision(model, c.selectors[0]);
  const IsolaModel iso = isola_for(model, col);
  const double theta = iso.most_unstable_theta();
  const auto pairs = continue_in_epsilon(model, iso, theta, c.epsilons, continuation_options(c));

  Table t({"epsilon", "Re_numeric", "Im_numeric", "Re_asymptotic", "Im_asymptotic", "error"});
  std::vector<std::pair<double, double>> errors;
  for (const auto& e : pairs) {
    const cd a = iso.at(e.epsilon, theta).lambda;
    const double err = std::abs(e.lambda - a);
    t.add({e.epsilon, e.lambda.real(), e.lambda.imag(), a.real(), a.imag(), err});
    errors.emplace_back(e.epsilon, err);
  }
  r.files.emplace_back("error_scaling.csv", t.csv());
  r.summary["theta"] = theta;
  try {
    const PowerLaw fit = fit_power_law(errors);
    r.summary["slope"] = fit.slope;
    r.summary["prefactor"] = fit.prefactor;
    r.summary["pass_slope_3"] = std::abs(fit.slope - 3.0) <= 0.2;
    // Fixed-exponent prefactors, geometric means of error / eps^k.
    for (int k : {3, 4}) {
      double lg = 0.0;
      for (const auto& [e, err] : errors) lg += std::log(err / std::pow(e, k));
      r.summary["prefactor_fixed_exponent_" + std::to_string(k)] = std::exp(lg / errors.size());
    }
  } catch (const Error& e) {
    r.summary["fit_error"] = e.what();
  }
}

void sheet_experiment(const ExperimentConfig& c, RunResult& r) {
  require(c.models.size() == c.selectors.size(), c.name + ": one selector per model");
  nlohmann::json sheets = nlohmann::json::array();
  for (std::size_t i = 0; i < c.models.size(); ++i) {
    const auto model = DispersionModel::parse(c.models[i]);
    const Collision col = select_collision(model, c.selectors[i]);
    const IsolaModel iso = isola_for(model, col);
    Table t({"epsilon", "theta", "Re", "Im", "p"});
    for (double eps : c.epsilons)
      for (const auto& pt : iso.sample(eps, c.theta_points))
        t.add({eps, pt.theta, pt.lambda.real(), pt.lambda.imag(), pt.p});
    const std::string file = c.models.size() == 1 ? "sheet.csv" : "sheet_" + slug(model) + ".csv";
    r.files.emplace_back(file, t.csv());
    sheets.push_back({{"model", model.spec_string()}, {"file", file}, {"order", iso.order},
                      {"max_growth_coefficient", iso.max_growth()}, {"rho", iso.rho}});
  }
  r.summary["sheets"] = sheets;
}

// Unstable FFH eigenvalues near the origin over a symmetric p window.
std::vector<UnstablePoint> bf_ffh_points(const DispersionModel& model, const LemniscateModel& lm, double eps, int N,
                                         int jobs, int per_side = 40) {
  const StokesWave wave = validation_wave(model, eps, 48);
  const double band = 1.2 * eps * std::max(lm.p1_max, 1e-3);
  std::vector<double> ps;
  for (int j = per_side; j >= 1; --j) ps.push_back(-band * j / per_side);
  for (int j = 1; j <= per_side; ++j) ps.push_back(band * j / per_side);
  const Sweep sw = sweep(model, wave, ps, N, 1e-10, jobs);
  const double radius = 2.0 * eps * std::max({std::abs(lm.cg1) * lm.p1_max, eps, 1e-3}) + 10.0 * eps * eps;
  std::vector<UnstablePoint> out;
  for (const auto& u : sw.unstable)
    if (std::abs(u.lambda) <= radius) out.push_back(u);
  return out;
}

void fig6_experiment(const ExperimentConfig& c, RunResult& r) {
  const double eps = c.epsilons.at(0);
  const int N = c.N > 0 ? c.N : default_truncation(eps);
  Table curve_t({"model", "theta", "branch", "Re", "Im", "p"});
  Table ffh_t({"model", "p", "Re", "Im"});
  nlohmann::json per_model = nlohmann::json::array();
  for (const auto& spec : c.models) {
    const auto model = DispersionModel::parse(spec);
    const LemniscateModel lm = bf_constants(model);
    nlohmann::json s = {{"model", model.spec_string()}, {"constants", bf_constants_json(lm)}};
    if (!lm.unstable) {
      s["note"] = "delta_bf <= 0";
      per_model.push_back(s);
      continue;
    }
    const auto curve = lemniscate_curve(lm, eps, 2048);
    for (std::size_t j = 0; j < curve.size(); j += 8)
      curve_t.add({model.spec_string(), curve[j].theta, (long long)curve[j].branch, curve[j].lambda.real(),
                   curve[j].lambda.imag(), curve[j].p});
    const auto pts = bf_ffh_points(model, lm, eps, N, c.jobs);
    double max_re = 0.0, max_dist = 0.0;
    for (const auto& u : pts) {
      ffh_t.add({model.spec_string(), u.p, u.lambda.real(), u.lambda.imag()});
      max_re = std::max(max_re, u.lambda.real());
      max_dist = std::max(max_dist, distance_to_curve(u.lambda, curve));
    }
    s["ffh_points"] = pts.size();
    s["ffh_max_re"] = max_re;
    s["eps2_abs_U"] = eps * eps * std::abs(lm.U);
    s["eps2_abs_U_delta"] = eps * eps * std::abs(lm.U) * lm.delta_bf;
    s["max_distance_to_lemniscate"] = max_dist;
    s["max_distance_over_eps3"] = max_dist / (eps * eps * eps);
    s["pass_distance_20eps3"] = !pts.empty() && max_dist <= 20.0 * eps * eps * eps;
    // The curve covers both signs of sin(theta), so its real extent is |U|.
    const double ext_u = eps * eps * std::abs(lm.U), ext_ud = ext_u * lm.delta_bf;
    s["pass_max_re_vs_eps2_U"] = std::abs(max_re - ext_u) <= 0.1 * ext_u;
    s["pass_max_re_vs_eps2_U_delta"] = std::abs(max_re - ext_ud) <= 0.1 * ext_ud;
    per_model.push_back(s);
  }
  r.files.emplace_back("lemniscate.csv", curve_t.csv());
  r.files.emplace_back("ffh.csv", ffh_t.csv());
  r.summary["epsilon"] = eps;
  r.summary["N"] = N;
  r.summary["models"] = per_model;
}

double log_slope(const std::vector<std::pair<double, double>>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x0, y0] : pts) {
    const double x = std::log(x0), y = std::log(y0);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void fig7_experiment(const ExperimentConfig& c, RunResult& r) {
  require(c.models.size() == 1, "fig7 takes one Akers-Milewski model");
  const auto model = DispersionModel::parse(c.models[0]);
  require(model.family() == Family::AkersMilewski, "fig7 needs an Akers-Milewski model");
  LemniscateModel lm = bf_constants(model);
  if (!lm.unstable) throw Error(ErrorCode::Stable, "delta_bf <= 0 for " + model.spec_string());

  Table ffh_t({"epsilon", "p", "Re", "Im"});
  Table scale_t({"epsilon", "re_extent", "im_extent"});
  std::vector<std::pair<double, double>> re_pts, im_pts;
  for (double eps : c.epsilons) {
    const int N = c.N > 0 ? c.N : default_truncation(eps);
    const auto pts = bf_ffh_points(model, lm, eps, N, c.jobs);
    double re = 0.0, im = 0.0;
    for (const auto& u : pts) {
      ffh_t.add({eps, u.p, u.lambda.real(), u.lambda.imag()});
      re = std::max(re, u.lambda.real());
      im = std::max(im, std::abs(u.lambda.imag()));
    }
    scale_t.add({eps, re, im});
    if (re > 0.0 && im > 0.0) {
      re_pts.emplace_back(eps, re);
      im_pts.emplace_back(eps, im);
    }
  }
  AmFitOptions fit;
  fit.jobs = c.jobs;
  const auto curve = am_lemniscate(model, c.isola_epsilon, 256, fit, &lm);
  r.files.emplace_back("lemniscate.csv", bf_table(curve).csv());
  r.files.emplace_back("ffh.csv", ffh_t.csv());
  r.files.emplace_back("scaling.csv", scale_t.csv());

  // Flat state just right of p = 0: modes -1 and 1 sit at the origin, k = 0 does not.
  const auto flat = spectrum_slice(model, validation_wave(model, 0.0), 1e-12, 8);
  int at_origin = 0;
  for (const auto& z : flat.eigenvalues) at_origin += std::abs(z) < 1e-8;

  r.summary["model"] = model.spec_string();
  r.summary["constants"] = bf_constants_json(lm);
  r.summary["cg1_is_zero"] = lm.cg1 == 0.0;
  r.summary["zero_eigenvalues_at_p0plus"] = at_origin;
  if (re_pts.size() >= 2) {
    const double re_exp = log_slope(re_pts), im_exp = log_slope(im_pts);
    r.summary["re_exponent"] = re_exp;
    r.summary["im_exponent"] = im_exp;
    r.summary["pass_re_exponent_2"] = std::abs(re_exp - 2.0) <= 0.2;
    r.summary["pass_im_exponent_3"] = std::abs(im_exp - 3.0) <= 0.3;
  }
}

void growth_experiment(const ExperimentConfig& c, RunResult& r) {
  Table all({"model", "kind", "k1", "k2", "p0", "growth"});
  nlohmann::json per_model = nlohmann::json::array();
  for (const auto& spec : c.models) {
    const auto model = DispersionModel::parse(spec);
    const GrowthReport g = compare_growth(model);
    const Table t = growth_table(model, g);
    for (const auto& row : t.rows()) all.add(row);
    nlohmann::json s = growth_json(g);
    s["model"] = model.spec_string();
    per_model.push_back(s);
  }
  r.files.emplace_back("growth.csv", all.csv());
  r.summary["models"] = per_model;
}

void write_bundle(const ExperimentConfig& c, const RunResult& r) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(c.out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create " + c.out_dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(fs::path(c.out_dir) / name, std::ios::binary);
    f << text;
    if (!f) throw Error(ErrorCode::Io, "cannot write " + (fs::path(c.out_dir) / name).string());
  };
  write("config.json", c.to_json().dump(2) + "\n");
  for (const auto& [name, text] : r.files) write(name, text);
  write("summary.json", r.summary.dump(2) + "\n");
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  require(!config.models.empty(), "experiment has no models");
  require(!config.epsilons.empty(), "experiment has no amplitudes");
  require(config.theta_points >= 4, "theta_points must be >= 4");
  for (double e : config.epsilons) require(e > 0.0 && std::isfinite(e), "amplitudes must be positive");
  for (const auto& m : config.models) DispersionModel::parse(m);

  RunResult r;
  r.summary["name"] = config.name;
  const std::string& n = config.name;
  if (n == "fig1-left" || n == "fig1-right")
    isola_experiment(config, r);
  else if (n == "fig2" || n == "fig3")
    sheet_experiment(config, r);
  else if (n == "fig4" || n == "fig5")
    quartet_experiment(config, r);
  else if (n == "fig6")
    fig6_experiment(config, r);
  else if (n == "fig7")
    fig7_experiment(config, r);
  else if (n == "compare-growth")
    growth_experiment(config, r);
  else
    registry_config(n);  // throws the config error listing known names
  if (!config.out_dir.empty()) write_bundle(config, r);
  return r;
}

}  // namespace stokes_spectra
