#include "glasslab/glasslab.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <string>

#include "glasslab/disorder.hpp"
#include "glasslab/experiments.hpp"
#include "glasslab/mixture.hpp"

using glasslab::ConfigError;

struct glasslab_mixture {
  glasslab::MixtureSpec spec;
};

namespace {

thread_local std::string g_last_error = "no error";

glasslab_status fail(glasslab_status code, const char* what) {
  g_last_error = what ? what : "unknown error";
  return code;
}

// Runs `fn`, translating the library's exception taxonomy to status codes.
template <typename Fn>
glasslab_status guarded(Fn&& fn) {
  try {
    fn();
    return GLASSLAB_OK;
  } catch (const glasslab::BudgetError& e) {
    return fail(GLASSLAB_ERR_BUDGET, e.what());
  } catch (const ConfigError& e) {
    return fail(GLASSLAB_ERR_CONFIG, e.what());
  } catch (const glasslab::IoError& e) {
    return fail(GLASSLAB_ERR_IO, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(GLASSLAB_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(GLASSLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(GLASSLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(GLASSLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(GLASSLAB_ERR_INTERNAL, "unknown exception");
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Accepts either a bare mixture document {"gammas": {...}} or a full
// experiment config embedding one under "mixture".
glasslab::MixtureSpec parse_mixture_json(const char* json) {
  if (!json) throw ConfigError("mixture JSON is null");
  glasslab::Json doc;
  try {
    doc = glasslab::Json::parse(json);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("mixture is not valid JSON: ") + e.what());
  }
  if (doc.contains("mixture")) doc = doc["mixture"];
  if (!doc.contains("gammas")) throw ConfigError("mixture requires a gammas object");
  std::map<int, double> gammas;
  for (const auto& [key, val] : doc["gammas"].items()) {
    gammas[std::stoi(key)] = val.get<double>();
  }
  return glasslab::MixtureSpec(std::move(gammas));
}

}  // namespace

extern "C" {

const char* glasslab_last_error(void) { return g_last_error.c_str(); }

const char* glasslab_version(void) { return "1.0.0"; }

void glasslab_string_free(char* s) { delete[] s; }

glasslab_status glasslab_mixture_parse(const char* json, glasslab_mixture** out) {
  if (!out) return fail(GLASSLAB_ERR_INVALID_ARGUMENT, "out handle is null");
  return guarded([&] { *out = new glasslab_mixture{parse_mixture_json(json)}; });
}

void glasslab_mixture_destroy(glasslab_mixture* m) { delete m; }

glasslab_status glasslab_mixture_xi(const glasslab_mixture* m, double z,
                                    int order, double* out) {
  if (!m || !out) return fail(GLASSLAB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = glasslab::xi_eval(m->spec, z, order); });
}

glasslab_status glasslab_mixture_descent_target(const glasslab_mixture* m,
                                                int quad_points, double* out) {
  if (!m || !out) return fail(GLASSLAB_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = glasslab::ground_state_target(m->spec, quad_points); });
}

glasslab_status glasslab_mixture_full_rsb(const glasslab_mixture* m,
                                          int grid_size, int* is_concave,
                                          double* worst_violation) {
  if (!m || !is_concave || !worst_violation) {
    return fail(GLASSLAB_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const glasslab::FullRsbResult res = glasslab::full_rsb_check(m->spec, grid_size);
    *is_concave = res.is_concave ? 1 : 0;
    *worst_violation = res.worst_violation;
  });
}

glasslab_status glasslab_mixture_info_json(const char* mixture_json,
                                           char** out_json) {
  if (!out_json) return fail(GLASSLAB_ERR_INVALID_ARGUMENT, "out pointer is null");
  return guarded([&] {
    glasslab::ExperimentConfig cfg{parse_mixture_json(mixture_json)};
    *out_json = dup_string(glasslab::mixture_info(cfg).dump(2) + "\n");
  });
}

glasslab_status glasslab_run(const char* experiment, const char* config_json,
                             const char* out_dir, int64_t seed_override,
                             int* tolerances_ok, char** report_json) {
  if (!experiment || !config_json) {
    return fail(GLASSLAB_ERR_INVALID_ARGUMENT, "experiment/config is null");
  }
  return guarded([&] {
    glasslab::ExperimentConfig cfg =
        glasslab::ExperimentConfig::from_json_text(config_json);
    if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);

    glasslab::ExperimentReport report = glasslab::run_experiment(experiment, cfg);

    std::string dir = (out_dir && *out_dir) ? out_dir : cfg.output_dir;
    if (!dir.empty()) glasslab::write_report(report, dir);
    if (tolerances_ok) *tolerances_ok = report.pass ? 1 : 0;
    if (report_json) *report_json = dup_string(report.to_json().dump(2) + "\n");
  });
}

}  // extern "C"
