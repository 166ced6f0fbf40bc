#include "stokes_spectra.h"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "parallel.hpp"
#include "stokes_spectra/error.hpp"
#include "stokes_spectra/harness.hpp"

using namespace stokes_spectra;

struct ss_model {
  DispersionModel model;
};

struct ss_wave {
  StokesWave wave;
};

struct ss_result {
  std::vector<std::pair<std::string, std::string>> items;
};

namespace {

thread_local std::string g_last_error;

ss_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return SS_INVALID_ARGUMENT;
    case ErrorCode::Parse: return SS_PARSE;
    case ErrorCode::JumpDiscontinuity: return SS_JUMP_DISCONTINUITY;
    case ErrorCode::NotDifferentiable: return SS_NOT_DIFFERENTIABLE;
    case ErrorCode::NoLimit: return SS_NO_LIMIT;
    case ErrorCode::WiltonResonance: return SS_WILTON_RESONANCE;
    case ErrorCode::ContinuationFailure: return SS_CONTINUATION_FAILURE;
    case ErrorCode::DegenerateGroupVelocity: return SS_DEGENERATE_GROUP_VELOCITY;
    case ErrorCode::StableCollision: return SS_STABLE_COLLISION;
    case ErrorCode::SecondaryResonance: return SS_SECONDARY_RESONANCE;
    case ErrorCode::DegenerateQuartet: return SS_DEGENERATE_QUARTET;
    case ErrorCode::DegenerateCurvature: return SS_DEGENERATE_CURVATURE;
    case ErrorCode::BfResonance: return SS_BF_RESONANCE;
    case ErrorCode::Stable: return SS_STABLE;
    case ErrorCode::SignRestriction: return SS_SIGN_RESTRICTION;
    case ErrorCode::EigFailure: return SS_EIG_FAILURE;
    case ErrorCode::NewtonDiverged: return SS_NEWTON_DIVERGED;
    case ErrorCode::InvalidData: return SS_INVALID_DATA;
    case ErrorCode::Config: return SS_CONFIG;
    case ErrorCode::Io: return SS_IO;
  }
  return SS_INTERNAL;
}

// Runs fn, translating exceptions into a status and the thread-local message.
template <class Fn>
ss_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("config-error: ") + e.what();
    return SS_CONFIG;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal: ") + e.what();
    return SS_INTERNAL;
  } catch (...) {
    g_last_error = "internal: unknown exception";
    return SS_INTERNAL;
  }
}

ss_status copy_text(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf) return needed ? SS_OK : SS_INVALID_ARGUMENT;
  if (cap < text.size() + 1) {
    g_last_error = "buffer too small";
    return SS_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return SS_OK;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Format to_format(ss_format f) {
  if (f == SS_FORMAT_CSV) return Format::Csv;
  if (f == SS_FORMAT_JSON) return Format::Json;
  throw Error(ErrorCode::Config, "unknown output format");
}

ss_status emit(ss_result** out, ss_result&& r) {
  *out = new ss_result(std::move(r));
  return SS_OK;
}

// A negative hint takes the first Krein-negative collision, else the first one.
Collision pick(const DispersionModel& model, int m, double p0_hint) {
  if (p0_hint >= 0.0) return select_collision(model, m, p0_hint);
  const auto all = find_collisions(model, m);
  if (all.empty()) throw Error(ErrorCode::Config, "no m = " + std::to_string(m) + " collisions for " + model.spec_string());
  for (const auto& c : all)
    if (c.krein_negative) return c;
  return all.front();
}

double eval(const ss_model* m, double k, double (DispersionModel::*f)(double) const) { return (m->model.*f)(k); }

}  // namespace

extern "C" {

const char* ss_version(void) { return "1.0.0"; }

const char* ss_status_string(ss_status status) {
  switch (status) {
    case SS_OK: return "ok";
    case SS_INVALID_ARGUMENT: return "invalid-argument";
    case SS_PARSE: return "parse-error";
    case SS_JUMP_DISCONTINUITY: return "jump-discontinuity";
    case SS_NOT_DIFFERENTIABLE: return "not-differentiable";
    case SS_NO_LIMIT: return "no-limit";
    case SS_WILTON_RESONANCE: return "Wilton-resonance";
    case SS_CONTINUATION_FAILURE: return "continuation-failure";
    case SS_DEGENERATE_GROUP_VELOCITY: return "degenerate-group-velocity";
    case SS_STABLE_COLLISION: return "stable-collision";
    case SS_SECONDARY_RESONANCE: return "secondary-resonance";
    case SS_DEGENERATE_QUARTET: return "degenerate-quartet";
    case SS_DEGENERATE_CURVATURE: return "degenerate-curvature";
    case SS_BF_RESONANCE: return "bf-resonance";
    case SS_STABLE: return "stable";
    case SS_SIGN_RESTRICTION: return "sign-restriction";
    case SS_EIG_FAILURE: return "eig-failure";
    case SS_NEWTON_DIVERGED: return "newton-diverged";
    case SS_INVALID_DATA: return "invalid-data";
    case SS_CONFIG: return "config-error";
    case SS_IO: return "io-error";
    case SS_BUFFER_TOO_SMALL: return "buffer-too-small";
    case SS_INTERNAL: return "internal";
  }
  return "unknown";
}

int ss_status_is_config(ss_status status) {
  switch (status) {
    case SS_INVALID_ARGUMENT:
    case SS_PARSE:
    case SS_CONFIG:
    case SS_IO:
    case SS_BUFFER_TOO_SMALL:
      return 1;
    default:
      return 0;
  }
}

ss_status ss_last_error(char* buf, size_t cap, size_t* needed) {
  const std::string copy = g_last_error;
  const ss_status s = copy_text(copy, buf, cap, needed);
  g_last_error = copy;
  return s;
}

ss_status ss_model_create(const char* spec, ss_model** out) {
  return guarded([&] {
    require(spec && out, "null argument");
    *out = new ss_model{DispersionModel::parse(spec)};
  });
}

void ss_model_destroy(ss_model* model) { delete model; }

ss_status ss_model_spec(const ss_model* model, char* buf, size_t cap, size_t* needed) {
  std::string text;
  const ss_status s = guarded([&] {
    require(model, "null model");
    text = model->model.spec_string();
  });
  return s == SS_OK ? copy_text(text, buf, cap, needed) : s;
}

#define SS_SCALAR(name, member)                                      \
  ss_status name(const ss_model* model, double k, double* out) {     \
    return guarded([&] {                                             \
      require(model && out, "null argument");                        \
      *out = eval(model, k, &DispersionModel::member);               \
    });                                                              \
  }
SS_SCALAR(ss_model_omega, omega)
SS_SCALAR(ss_model_phase_velocity, phase_velocity)
SS_SCALAR(ss_model_group_velocity, group_velocity)
SS_SCALAR(ss_model_second_derivative, second_derivative)
#undef SS_SCALAR

ss_status ss_wave_expand(const ss_model* model, double epsilon, int order, ss_wave** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = new ss_wave{stokes_expand(model->model, epsilon, order)};
  });
}

ss_status ss_wave_numeric(const ss_model* model, double epsilon, int n_modes, ss_wave** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = new ss_wave{stokes_numeric(model->model, epsilon, n_modes)};
  });
}

void ss_wave_destroy(ss_wave* wave) { delete wave; }

ss_status ss_wave_speed(const ss_wave* wave, double* out) {
  return guarded([&] {
    require(wave && out, "null argument");
    *out = wave->wave.speed;
  });
}

ss_status ss_wave_coeffs(const ss_wave* wave, double* buf, size_t cap, size_t* needed) {
  if (!wave) return guarded([] { require(false, "null wave"); });
  const auto& c = wave->wave.fourier;
  if (needed) *needed = c.size();
  if (!buf) return needed ? SS_OK : SS_INVALID_ARGUMENT;
  if (cap < c.size()) {
    g_last_error = "buffer too small";
    return SS_BUFFER_TOO_SMALL;
  }
  std::copy(c.begin(), c.end(), buf);
  return SS_OK;
}

ss_status ss_wave_json(const ss_wave* wave, char* buf, size_t cap, size_t* needed) {
  std::string text;
  const ss_status s = guarded([&] {
    require(wave, "null wave");
    text = to_json(wave->wave);
  });
  return s == SS_OK ? copy_text(text, buf, cap, needed) : s;
}

ss_search ss_search_default(void) {
  const CollisionSearch d;
  return {d.k_min, d.k_max, d.grid};
}

ss_status ss_collisions(const ss_model* model, int m, const ss_search* search, ss_format format, ss_result** out) {
  return guarded([&] {
    require(model && out, "null argument");
    CollisionSearch s;
    if (search) s = {search->k_min, search->k_max, search->grid};
    const Table t = collisions_table(model->model, find_collisions(model->model, m, s));
    emit(out, {{{format == SS_FORMAT_JSON ? "collisions.json" : "collisions.csv", t.render(to_format(format))}}});
  });
}

ss_status ss_isola(const ss_model* model, int m, double p0_hint, double epsilon, int n_theta, ss_format format,
                   ss_result** out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(epsilon >= 0.0, "amplitude must be >= 0");
    const Collision c = pick(model->model, m, p0_hint);
    const Table t = isola_table(isola_for(model->model, c), epsilon, n_theta);
    emit(out, {{{format == SS_FORMAT_JSON ? "isola.json" : "isola.csv", t.render(to_format(format))}}});
  });
}

ss_status ss_bf(const ss_model* model, double epsilon, int n_theta, ss_format format, ss_result** out) {
  return guarded([&] {
    require(model && out, "null argument");
    LemniscateModel lm = bf_constants(model->model);
    std::vector<LemniscatePoint> curve;
    if (lm.am_mode)
      curve = am_lemniscate(model->model, epsilon, n_theta, {}, &lm);
    else
      curve = lemniscate_curve(lm, epsilon, n_theta);
    const Table t = bf_table(curve);
    const nlohmann::json constants = bf_constants_json(lm);
    if (format == SS_FORMAT_JSON) {
      emit(out, {{{"bf.json", nlohmann::json{{"constants", constants}, {"rows", t.json()}}.dump(2) + "\n"}}});
    } else {
      emit(out, {{{"bf.csv", t.csv()}, {"constants.json", constants.dump(2) + "\n"}}});
    }
  });
}

ss_status ss_spectrum(const ss_model* model, double epsilon, double p_min, double p_max, int n_p, int N,
                      int unstable_only, int jobs, ss_format format, ss_result** out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(n_p >= 1, "need at least one Floquet exponent");
    require(p_max >= p_min, "p_max < p_min");
    const int n = N > 0 ? N : default_truncation(epsilon);
    std::vector<double> ps(n_p);
    for (int j = 0; j < n_p; ++j) ps[j] = n_p == 1 ? p_min : p_min + (p_max - p_min) * j / (n_p - 1);
    const StokesWave wave = validation_wave(model->model, epsilon, std::max(32, n));
    const Sweep sw = sweep(model->model, wave, ps, n, 1e-10, jobs);
    const Table t = spectrum_table(sw, unstable_only != 0);
    emit(out, {{{format == SS_FORMAT_JSON ? "spectrum.json" : "spectrum.csv", t.render(to_format(format))}}});
  });
}

ss_status ss_trace(const ss_model* model, int m, double p0_hint, const double* eps, size_t n_eps,
                   const double* thetas, size_t n_theta, int N, int jobs, ss_format format, ss_result** out) {
  return guarded([&] {
    require(model && out && (eps || n_eps == 0) && (thetas || n_theta == 0), "null argument");
    require(n_eps > 0, "need at least one amplitude");
    const Collision c = pick(model->model, m, p0_hint);
    const IsolaModel iso = isola_for(model->model, c);
    std::vector<double> th(thetas, thetas + n_theta);
    if (th.empty()) th.push_back(iso.most_unstable_theta());
    const std::vector<double> targets(eps, eps + n_eps);
    ContinuationOptions opts;
    if (N > 0) opts.N = N;
    std::vector<std::vector<EigenPair>> results(th.size());
    detail::parallel_for(th.size(), jobs,
                         [&](std::size_t i) { results[i] = continue_in_epsilon(model->model, iso, th[i], targets, opts); });
    std::vector<std::pair<double, std::vector<EigenPair>>> rows;
    for (std::size_t i = 0; i < th.size(); ++i) rows.emplace_back(th[i], std::move(results[i]));
    const Table t = trace_table(rows);
    emit(out, {{{format == SS_FORMAT_JSON ? "trace.json" : "trace.csv", t.render(to_format(format))}}});
  });
}

ss_status ss_compare_growth(const ss_model* model, ss_format format, ss_result** out) {
  return guarded([&] {
    require(model && out, "null argument");
    const GrowthReport g = compare_growth(model->model);
    const Table t = growth_table(model->model, g);
    nlohmann::json summary = growth_json(g);
    summary["model"] = model->model.spec_string();
    if (format == SS_FORMAT_JSON) {
      summary["rows"] = t.json();
      emit(out, {{{"growth.json", summary.dump(2) + "\n"}}});
    } else {
      emit(out, {{{"growth.csv", t.csv()}, {"verdict.json", summary.dump(2) + "\n"}}});
    }
  });
}

ss_status ss_run_experiment(const char* name, const char* overrides_json, const char* out_dir, ss_result** out) {
  return guarded([&] {
    require(name && out, "null argument");
    ExperimentConfig c = registry_config(name);
    if (overrides_json && *overrides_json) {
      const auto j = nlohmann::json::parse(overrides_json);
      if (!j.is_object()) throw Error(ErrorCode::Config, "overrides must be a JSON object");
      for (const auto& [key, value] : j.items()) {
        if (key == "models")
          c.models = value.get<std::vector<std::string>>();
        else if (key == "selectors")
          c.selectors = value.get<std::vector<std::string>>();
        else if (key == "epsilons")
          c.epsilons = value.get<std::vector<double>>();
        else if (key == "isola_epsilon")
          c.isola_epsilon = value.get<double>();
        else if (key == "theta_points")
          c.theta_points = value.get<int>();
        else if (key == "N")
          c.N = value.get<int>();
        else if (key == "jobs")
          c.jobs = value.get<int>();
        else
          throw Error(ErrorCode::Config, "unknown override '" + key + "'");
      }
      // A single model override keeps the registry selector unless one is given.
      if (c.selectors.size() != c.models.size() && c.selectors.size() == 1)
        c.selectors.assign(c.models.size(), c.selectors.front());
    }
    c.out_dir = out_dir ? out_dir : "";
    RunResult r = run(c);
    ss_result res;
    res.items.emplace_back("summary.json", r.summary.dump(2) + "\n");
    for (auto& f : r.files) res.items.push_back(std::move(f));
    emit(out, std::move(res));
  });
}

ss_status ss_experiment_names(char* buf, size_t cap, size_t* needed) {
  std::string text;
  for (const auto& n : registry_names()) text += n + "\n";
  return copy_text(text, buf, cap, needed);
}

size_t ss_result_count(const ss_result* result) { return result ? result->items.size() : 0; }

ss_status ss_result_name(const ss_result* result, size_t index, char* buf, size_t cap, size_t* needed) {
  if (!result || index >= result->items.size()) return guarded([] { require(false, "result index out of range"); });
  return copy_text(result->items[index].first, buf, cap, needed);
}

ss_status ss_result_text(const ss_result* result, size_t index, char* buf, size_t cap, size_t* needed) {
  if (!result || index >= result->items.size()) return guarded([] { require(false, "result index out of range"); });
  return copy_text(result->items[index].second, buf, cap, needed);
}

void ss_result_destroy(ss_result* result) { delete result; }

}  // extern "C"
