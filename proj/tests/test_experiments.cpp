#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glasslab/experiments.hpp"

using namespace glasslab;

namespace {

const char* base_config = R"({
  "mixture": {"gammas": {"2": 1.0}},
  "disorder": {"kind": "gaussian", "lsi_constant": null},
  "N": 100,
  "seed": 7,
  "trials": 2,
  "eps": 0.8,
  "K": 20,
  "moment_ks": [2, 3],
  "x_sampling": {"mode": "sphere_uniform", "n_points": 1}
})";

ExperimentConfig parse(const std::string& text) {
  return ExperimentConfig::from_json_text(text);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse(base_config);
  CHECK(cfg.N == 100);
  CHECK(cfg.mixture.gamma(2) == 1.0);
  CHECK(cfg.disorder.kind == DisorderKind::gaussian);
  CHECK(cfg.trials == 2);
  CHECK(cfg.moment_ks == std::vector<int>{2, 3});

  CHECK_THROWS_AS(parse("{"), ConfigError);
  CHECK_THROWS_AS(parse("{}"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"mixture": {"gammas": {"2": -1}}})"), ConfigError);
  CHECK_THROWS_AS(parse(R"({"mixture": {"gammas": {"2": 1}}, "disorder": {"kind": "cauchy"}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse(R"({"mixture": {"gammas": {"2": 1}}, "trials": 0})"),
                  ConfigError);
  CHECK_THROWS_AS(parse(R"({"mixture": {"gammas": {"2": 1}}, "eps": -0.5})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse(R"({"mixture": {"gammas": {"2": 1}}, "x_sampling": {"mode": "lattice"}})"),
      ConfigError);
}

TEST_CASE("spectrum run") {
  ExperimentConfig cfg = parse(base_config);
  cfg.tol.w1 = 0.15;
  const ExperimentReport rep = run_spectrum(cfg);
  CHECK(rep.experiment == "spectrum");
  CHECK(rep.records.size() == 1);
  CHECK(rep.summary["max_w1"].get<double>() <= 0.15);
  CHECK(rep.pass);
  REQUIRE(rep.artifacts.size() == 1);
  CHECK(rep.artifacts[0].first == "esd_0.json");
  const Json esd = Json::parse(rep.artifacts[0].second);
  CHECK(esd["eigenvalues"].size() == 100);
  CHECK(esd["rho"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("moments run") {
  ExperimentConfig cfg = parse(base_config);
  cfg.N = 80;
  cfg.trials = 5;
  const ExperimentReport rep = run_moments(cfg);
  CHECK(rep.pass);
  bool saw_k2 = false;
  for (const auto& rec : rep.records) {
    if (rec.contains("k") && rec["k"] == 2) {
      saw_k2 = true;
      CHECK(rec["catalan_target"].get<double>() == 1.0);
      CHECK(std::fabs(rec["deviation"].get<double>()) <=
            rec["tolerance"].get<double>());
      CHECK(rec.contains("normalized_projected"));
    }
  }
  CHECK(saw_k2);
  ExperimentConfig empty = cfg;
  empty.moment_ks.clear();
  CHECK_THROWS_AS(run_moments(empty), ConfigError);
}

TEST_CASE("edge run") {
  ExperimentConfig cfg = parse(R"({
    "mixture": {"gammas": {"2": 1.0, "3": 1.0}},
    "N": 80,
    "seed": 3,
    "trials": 1,
    "eps": 0.8,
    "x_sampling": {"mode": "radii_grid", "radii": [0.2, 0.5, 0.75, 1.0]}
  })");
  const ExperimentReport rep = run_edge(cfg);
  CHECK(rep.records.size() == 4);
  CHECK(rep.summary["delta_calibrated"].get<double>() > 0.0);
  CHECK(rep.summary["fraction_passing"].get<double>() >= 0.95);
  CHECK(rep.pass);
  // Window far beyond the right edge: every mass is 1.
  ExperimentConfig wide = cfg;
  wide.eps = 4.0 * std::sqrt(xi_eval(cfg.mixture, 1.0, 2)) + 1.0;
  const ExperimentReport rep2 = run_edge(wide);
  CHECK(rep2.summary["min_mass"].get<double>() == 1.0);
}

TEST_CASE("edge skips degenerate points with a reason") {
  ExperimentConfig cfg = parse(R"({
    "mixture": {"gammas": {"3": 1.0}},
    "N": 40,
    "seed": 5,
    "eps": 0.5,
    "x_sampling": {"mode": "radii_grid", "radii": [0.0, 0.5]}
  })");
  const ExperimentReport rep = run_edge(cfg);
  CHECK(rep.summary["skipped_points"].get<int>() == 1);
  bool found = false;
  for (const auto& rec : rep.records) {
    if (rec.contains("skipped")) {
      found = true;
      CHECK(rec["reason"].get<std::string>().find("xi''") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("descent run") {
  ExperimentConfig cfg = parse(base_config);
  cfg.K = 50;
  cfg.trials = 2;
  cfg.tol.energy = 0.2;
  const ExperimentReport rep = run_descent(cfg);
  CHECK(rep.pass);
  CHECK(rep.summary["target_energy_per_site"].get<double>() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(rep.summary["full_rsb"]["is_concave"].get<bool>());
  CHECK(rep.artifacts.size() == 2);  // one trace per trial
  CHECK(rep.artifacts[0].first == "descent_trace_0.csv");
  CHECK(rep.artifacts[0].second.rfind("step,rho,", 0) == 0);
}

TEST_CASE("universality run") {
  ExperimentConfig cfg = parse(R"({
    "mixture": {"gammas": {"2": 1.0}},
    "disorders": [{"kind": "gaussian"}, {"kind": "gaussian"}],
    "N": 50,
    "seed": 11,
    "trials": 2,
    "eps": 0.8,
    "K": 10,
    "x_sampling": {"mode": "sphere_uniform", "n_points": 2}
  })");
  // Identical kinds share every draw, so both gaps are exactly zero.
  const ExperimentReport rep = run_universality(cfg);
  CHECK(rep.pass);
  for (const Check& c : rep.checks) CHECK(c.value == 0.0);

  ExperimentConfig single = cfg;
  single.disorders.pop_back();
  CHECK_THROWS_AS(run_universality(single), ConfigError);

  ExperimentConfig mixed = cfg;
  mixed.disorders[1] = DisorderSpec::make(DisorderKind::uniform_sym);
  mixed.tol.universality_energy = 0.35;  // small-N spread
  mixed.tol.universality_edge = 0.2;
  const ExperimentReport rep2 = run_universality(mixed);
  CHECK(rep2.records.size() == 2);
  bool tags_seen = false;
  for (const auto& rec : rep2.records) {
    if (rec["kind"] == "uniform_sym") {
      tags_seen = true;
      CHECK(rec["condition_tags"].size() == 3);
    }
  }
  CHECK(tags_seen);
}

TEST_CASE("concentration run") {
  ExperimentConfig cfg = parse(R"({
    "mixture": {"gammas": {"2": 1.0}},
    "N_grid": [60, 240],
    "seed": 13,
    "trials": 20,
    "eps": 0.8
  })");
  const ExperimentReport rep = run_concentration(cfg);
  CHECK(rep.summary["std_ratio_small_over_large"].get<double>() >= 1.5);
  CHECK(rep.summary["lipschitz_constant"].get<double>() ==
        doctest::Approx(2.0 / 0.8));
  CHECK(rep.summary["c_gamma"].get<double>() == doctest::Approx(2.0));
  CHECK(rep.pass);

  ExperimentConfig few = cfg;
  few.trials = 1;
  CHECK_THROWS_AS(run_concentration(few), ConfigError);
  ExperimentConfig one_n = cfg;
  one_n.N_grid = {100};
  CHECK_THROWS_AS(run_concentration(one_n), ConfigError);
}

TEST_CASE("reports are bit-reproducible") {
  ExperimentConfig cfg = parse(base_config);
  cfg.N = 60;
  const std::string a = run_spectrum(cfg).to_json().dump(2);
  const std::string b = run_spectrum(cfg).to_json().dump(2);
  CHECK(a == b);
  const std::string c = run_descent(cfg).to_json().dump(2);
  const std::string d = run_descent(cfg).to_json().dump(2);
  CHECK(c == d);
}

TEST_CASE("thresholds appear verbatim in the report") {
  ExperimentConfig cfg = parse(base_config);
  cfg.N = 60;
  cfg.tol.w1 = 0.123;
  const Json j = run_spectrum(cfg).to_json();
  CHECK(j["checks"][0]["threshold"].get<double>() == 0.123);
  CHECK(j["config"]["tolerances"]["w1"].get<double>() == 0.123);
}

TEST_CASE("report writing") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "glasslab_test_report";
  fs::remove_all(dir);
  ExperimentConfig cfg = parse(base_config);
  cfg.N = 60;
  const ExperimentReport rep = run_spectrum(cfg);
  write_report(rep, dir.string());
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "esd_0.json"));
  CHECK(fs::exists(dir / "timing.txt"));
  const Json parsed = Json::parse(slurp(dir / "report.json"));
  CHECK(parsed["experiment"] == "spectrum");
  CHECK(parsed["pass"].is_boolean());
  fs::remove_all(dir);
}

TEST_CASE("mixture info") {
  const ExperimentConfig cfg = parse(base_config);
  const Json info = mixture_info(cfg);
  CHECK(info["p_max"] == 2);
  CHECK(info["xi_second_at_1"].get<double>() == 2.0);
  CHECK(info["descent_energy_target"].get<double>() ==
        doctest::Approx(std::sqrt(2.0)));
  CHECK(info["full_rsb"]["is_concave"].get<bool>());
}

TEST_CASE("experiment dispatch") {
  const ExperimentConfig cfg = parse(base_config);
  CHECK_THROWS_AS(run_experiment("annealing", cfg), ConfigError);
  CHECK(run_experiment("descent", cfg).experiment == "descent");
}
