#ifndef GLASSLAB_EXPERIMENTS_HPP
#define GLASSLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "glasslab/disorder.hpp"
#include "glasslab/mixture.hpp"

namespace glasslab {

using Json = nlohmann::ordered_json;

/// Invalid configuration or usage; the CLI maps this to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting results.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct XSampling {
  enum class Mode { sphere_uniform, ball_uniform, radii_grid };
  Mode mode = Mode::sphere_uniform;
  int n_points = 1;
  std::vector<double> radii;  // radii_grid: one point per requested rho
  double min_rho = 0.0;       // ball mode: deterministic resampling floor
};

/// Declared pass/fail thresholds. Every value used by a check is echoed
/// verbatim into the report.
struct Tolerances {
  double w1 = 0.1;
  double moment_a = 8.0;   // Monte Carlo term a/sqrt(trials*N)
  double moment_b = 40.0;  // finite-size term b/N
  double edge_fraction = 0.95;
  double energy = 0.15;
  double universality_energy = 0.1;
  double universality_edge = 0.05;
  double concentration_ratio = 1.5;
};

struct ExperimentConfig {
  MixtureSpec mixture;
  DisorderSpec disorder = DisorderSpec::make(DisorderKind::gaussian);
  std::vector<DisorderSpec> disorders;  // universality: >= 2 kinds
  int N = 100;
  std::vector<int> N_grid;  // concentration: >= 2 sizes
  std::uint64_t seed = 1;
  int trials = 1;
  double eps = 0.5;
  int K = 100;
  std::vector<int> moment_ks = {2, 3, 4};
  XSampling x_sampling;
  std::string output_dir;
  Tolerances tol;

  explicit ExperimentConfig(MixtureSpec m) : mixture(std::move(m)) {}

  static ExperimentConfig from_json(const Json& doc);
  static ExperimentConfig from_json_text(const std::string& text);
  Json echo() const;
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  std::string comparison;  // "<=" or ">="
  bool pass = false;
};

/// Deterministic experiment outcome. Everything that lands in report.json is
/// a pure function of (config, seed); the wall clock is kept out of it and
/// written to a separate timing file.
struct ExperimentReport {
  std::string experiment;
  Json config_echo;
  Json records = Json::array();
  Json summary = Json::object();
  std::vector<Check> checks;
  bool pass = true;
  double wall_clock_seconds = 0.0;
  std::vector<std::pair<std::string, std::string>> artifacts;  // name -> bytes

  Json to_json() const;
};

ExperimentReport run_spectrum(const ExperimentConfig& cfg);
ExperimentReport run_moments(const ExperimentConfig& cfg);
ExperimentReport run_edge(const ExperimentConfig& cfg);
ExperimentReport run_descent(const ExperimentConfig& cfg);
ExperimentReport run_universality(const ExperimentConfig& cfg);
ExperimentReport run_concentration(const ExperimentConfig& cfg);

/// Static facts about the configured mixture (xi values, descent target,
/// concavity verdict).
Json mixture_info(const ExperimentConfig& cfg);

/// Dispatch by experiment name; throws ConfigError for unknown names.
ExperimentReport run_experiment(const std::string& name,
                                const ExperimentConfig& cfg);

/// Writes report.json, per-experiment artifacts, and timing.txt to out_dir.
void write_report(const ExperimentReport& report, const std::string& out_dir);

}  // namespace glasslab

#endif
