// Command-line front end over the C interface.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "stokes_spectra.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kNumeric = 3;

struct Globals {
  std::string model;
  std::vector<double> epsilon;
  int n_modes = 0;
  std::string out;
  int jobs = 1;
  std::string format = "csv";
};

std::string last_error() {
  size_t n = 0;
  ss_last_error(nullptr, 0, &n);
  std::string s(n, '\0');
  ss_last_error(s.data(), s.size(), &n);
  s.resize(n ? n - 1 : 0);
  return s;
}

int fail(ss_status st) {
  std::string msg = last_error();
  if (msg.empty()) msg = ss_status_string(st);
  std::cerr << "stokes-spectra: " << msg << "\n";
  return ss_status_is_config(st) ? kConfig : kNumeric;
}

int config_error(const std::string& msg) {
  std::cerr << "stokes-spectra: config-error: " << msg << "\n";
  return kConfig;
}

std::string fetch(ss_status (*get)(const ss_result*, size_t, char*, size_t, size_t*), const ss_result* r,
                  size_t i) {
  size_t n = 0;
  get(r, i, nullptr, 0, &n);
  std::string s(n, '\0');
  get(r, i, s.data(), s.size(), &n);
  s.resize(n ? n - 1 : 0);
  return s;
}

// Primary artifact to stdout, the rest to stderr; with --out everything goes to files.
int deliver(ss_result* r, const Globals& g, bool already_written = false) {
  const size_t n = ss_result_count(r);
  int rc = kOk;
  if (!g.out.empty() && !already_written) {
    std::error_code ec;
    std::filesystem::create_directories(g.out, ec);
    if (ec) {
      ss_result_destroy(r);
      return config_error("cannot create " + g.out + ": " + ec.message());
    }
    for (size_t i = 0; i < n; ++i) {
      const auto path = std::filesystem::path(g.out) / fetch(ss_result_name, r, i);
      std::ofstream f(path, std::ios::binary);
      f << fetch(ss_result_text, r, i);
      if (!f) {
        rc = config_error("cannot write " + path.string());
        break;
      }
      std::cout << path.string() << "\n";
    }
  } else if (!g.out.empty()) {
    for (size_t i = 0; i < n; ++i)
      std::cout << (std::filesystem::path(g.out) / fetch(ss_result_name, r, i)).string() << "\n";
  } else {
    for (size_t i = 0; i < n; ++i) (i == 0 ? std::cout : std::cerr) << fetch(ss_result_text, r, i);
  }
  ss_result_destroy(r);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral stability of small-amplitude Stokes waves", "stokes-spectra"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ss_version()));

  Globals g;
  app.add_option("--model", g.model, "dispersion model, e.g. kawahara:a=1,b=-0.25 or capillarywhitham:sigma=2.5");
  app.add_option("--epsilon", g.epsilon, "wave amplitude (repeatable; trace uses every value)")->take_all();
  app.add_option("--n-modes", g.n_modes, "Fourier truncation for numerical spectra")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write artifacts to this directory");
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.fallthrough();

  int m = 1;
  double p0 = -1.0;
  int theta_points = 256;
  ss_search search = ss_search_default();

  auto* collisions = app.add_subcommand("collisions", "list collisions of flat-state eigenvalues");
  collisions->add_option("--m", m, "collision order")->check(CLI::PositiveNumber);
  collisions->add_option("--k-min", search.k_min, "smallest mode number");
  collisions->add_option("--k-max", search.k_max, "largest mode number");
  collisions->add_option("--grid", search.grid, "grid points on (0,1)")->check(CLI::PositiveNumber);

  auto* isola = app.add_subcommand("isola", "asymptotic high-frequency isola");
  isola->add_option("--m", m, "collision order")->check(CLI::PositiveNumber);
  isola->add_option("--p0", p0, "collision exponent to pick (default: first Krein-negative)");
  isola->add_option("--theta-points", theta_points, "samples in theta")->check(CLI::PositiveNumber);

  auto* bf = app.add_subcommand("bf", "Benjamin-Feir figure-eight");
  bf->add_option("--theta-points", theta_points, "samples in theta")->check(CLI::PositiveNumber);

  double p_min = 0.0, p_max = 1.0;
  int p_points = 201;
  bool unstable_only = false;
  auto* spectrum = app.add_subcommand("spectrum", "numerical spectrum over a range of Floquet exponents");
  spectrum->add_option("--p-min", p_min, "first Floquet exponent");
  spectrum->add_option("--p-max", p_max, "last Floquet exponent");
  spectrum->add_option("--p-points", p_points, "number of exponents")->check(CLI::PositiveNumber);
  spectrum->add_flag("--unstable-only", unstable_only, "only rows with Re > 1e-10");

  std::vector<double> thetas;
  auto* trace = app.add_subcommand("trace", "continue one isola eigenvalue in epsilon");
  trace->add_option("--m", m, "collision order")->check(CLI::PositiveNumber);
  trace->add_option("--p0", p0, "collision exponent to pick (default: first Krein-negative)");
  trace->add_option("--theta", thetas, "isola angle (repeatable; default: most unstable)")->take_all();

  std::string name, overrides;
  bool list = false;
  auto* run = app.add_subcommand("run", "run a named experiment");
  run->add_option("name", name, "experiment name");
  run->add_option("--set", overrides, "JSON object of config overrides");
  run->add_flag("--list", list, "print the experiment names");

  auto* growth = app.add_subcommand("compare-growth", "compare leading growth rates of each instability");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  ss_format fmt = g.format == "json" ? SS_FORMAT_JSON : SS_FORMAT_CSV;
  ss_result* result = nullptr;

  if (*run) {
    if (list) {
      size_t n = 0;
      ss_experiment_names(nullptr, 0, &n);
      std::string s(n, '\0');
      ss_experiment_names(s.data(), s.size(), &n);
      std::cout << s.c_str();
      return kOk;
    }
    if (name.empty()) return config_error("run needs an experiment name (see --list)");
    std::string ov = overrides;
    if (!g.model.empty() || !g.epsilon.empty() || g.n_modes > 0 || g.jobs > 1) {
      // Global flags become overrides; --set wins if both are present.
      std::string extra;
      auto add = [&](const std::string& kv) { extra += (extra.empty() ? "" : ",") + kv; };
      if (!g.model.empty()) add("\"models\":[\"" + g.model + "\"]");
      if (!g.epsilon.empty()) {
        std::string list_text;
        for (double e : g.epsilon) list_text += (list_text.empty() ? "" : ",") + CLI::detail::to_string(e);
        add("\"epsilons\":[" + list_text + "]");
      }
      if (g.n_modes > 0) add("\"N\":" + std::to_string(g.n_modes));
      if (g.jobs > 1) add("\"jobs\":" + std::to_string(g.jobs));
      if (ov.empty())
        ov = "{" + extra + "}";
      else if (ov.find('{') != std::string::npos)
        ov = "{" + extra + "," + ov.substr(ov.find('{') + 1);
    }
    const ss_status st = ss_run_experiment(name.c_str(), ov.empty() ? nullptr : ov.c_str(),
                                           g.out.empty() ? nullptr : g.out.c_str(), &result);
    if (st != SS_OK) return fail(st);
    if (g.out.empty()) {
      // Only the summary on stdout when nothing is written to disk.
      std::cout << fetch(ss_result_text, result, 0);
      ss_result_destroy(result);
      return kOk;
    }
    return deliver(result, g, true);
  }

  if (g.model.empty()) return config_error("--model is required");
  ss_model* model = nullptr;
  ss_status st = ss_model_create(g.model.c_str(), &model);
  if (st != SS_OK) return fail(st);

  const double eps = g.epsilon.empty() ? 1e-2 : g.epsilon.front();
  if (*collisions) {
    st = ss_collisions(model, m, &search, fmt, &result);
  } else if (*isola) {
    st = ss_isola(model, m, p0, eps, theta_points, fmt, &result);
  } else if (*bf) {
    st = ss_bf(model, eps, theta_points, fmt, &result);
  } else if (*spectrum) {
    st = ss_spectrum(model, eps, p_min, p_max, p_points, g.n_modes, unstable_only ? 1 : 0, g.jobs, fmt, &result);
  } else if (*trace) {
    std::vector<double> e = g.epsilon.empty() ? std::vector<double>{1e-2} : g.epsilon;
    st = ss_trace(model, m, p0, e.data(), e.size(), thetas.data(), thetas.size(), g.n_modes, g.jobs, fmt, &result);
  } else if (*growth) {
    st = ss_compare_growth(model, fmt, &result);
  }
  ss_model_destroy(model);
  if (st != SS_OK) return fail(st);
  return deliver(result, g);
}
