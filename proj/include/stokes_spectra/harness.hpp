#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "stokes_spectra/bf_asymptotics.hpp"
#include "stokes_spectra/ffh.hpp"
#include "stokes_spectra/flatspec.hpp"
#include "stokes_spectra/hf_asymptotics.hpp"
#include "stokes_spectra/qnewton.hpp"
#include "stokes_spectra/table.hpp"

namespace stokes_spectra {

// ---- table builders shared by the CLI and the experiment runs ----

Table collisions_table(const DispersionModel& model, const std::vector<Collision>& collisions);
Table isola_table(const IsolaModel& isola, double epsilon, int n_theta);
Table bf_table(const std::vector<LemniscatePoint>& curve);
nlohmann::json bf_constants_json(const LemniscateModel& lm);
Table spectrum_table(const Sweep& sweep, bool unstable_only);
Table trace_table(const std::vector<std::pair<double, std::vector<EigenPair>>>& traces);
Table growth_table(const DispersionModel& model, const GrowthReport& report);
nlohmann::json growth_json(const GrowthReport& report);

/// Parses "m=2,p0=0.3675" (p0 optional, k1 optional) and returns the matching
/// collision nearest to p0, preferring Krein-negative ones.
Collision select_collision(const DispersionModel& model, const std::string& selector,
                           const CollisionSearch& search = {});
Collision select_collision(const DispersionModel& model, int m, double p0_hint, const CollisionSearch& search = {});

/// Hausdorff distance between two finite point sets in the complex plane.
double hausdorff(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b);

/// Distance from z to the nearest point of a densely sampled lemniscate.
double distance_to_curve(std::complex<double> z, const std::vector<LemniscatePoint>& curve);

struct PowerLaw {
  double slope;
  double prefactor;
};

/// Least-squares line through (log eps, log error). Needs >= 4 positive pairs.
PowerLaw fit_power_law(const std::vector<std::pair<double, double>>& pairs);

// ---- experiment registry ----

struct ExperimentConfig {
  std::string name;
  std::vector<std::string> models;
  std::vector<std::string> selectors;  // one per model: "m=..,p0=.." or "bf"
  std::vector<double> epsilons;
  double isola_epsilon = 0.0;  // amplitude for the isola / curve snapshot
  int theta_points = 64;
  int N = 0;  // 0: module default
  std::string out_dir;
  int jobs = 1;

  nlohmann::json to_json() const;
};

std::vector<std::string> registry_names();

/// Registry defaults for a named experiment; unknown names raise config-error.
ExperimentConfig registry_config(const std::string& name);

struct RunResult {
  std::vector<std::pair<std::string, std::string>> files;  // name, contents
  nlohmann::json summary;
};

/// Executes the experiment. When config.out_dir is set the bundle
/// (config.json, the CSV files and summary.json) is written there.
RunResult run(const ExperimentConfig& config);

}  // namespace stokes_spectra
