#include "glasslab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>

#include "glasslab/descent.hpp"
#include "glasslab/hamiltonian.hpp"
#include "glasslab/laws.hpp"
#include "glasslab/rng.hpp"
#include "glasslab/spectral.hpp"

namespace glasslab {

namespace {

// Seed derivation tags; one per consumer so streams never collide.
constexpr std::uint64_t tag_model = 0x4d4f444cULL;
constexpr std::uint64_t tag_descent = 0x44455343ULL;
constexpr std::uint64_t tag_size = 0x53495a45ULL;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) throw ConfigError("sample std undefined for fewer than 2 values");
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / (static_cast<double>(v.size()) - 1.0));
}

// Cosine alignment of two sequences. Unlike centered correlation this stays
// meaningful when one side is constant (pure 2-spin predictions are).
double alignment(const std::vector<double>& a, const std::vector<double>& b) {
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += a[i] * b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

void assert_finite(const Json& j, const std::string& where) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) {
    throw std::runtime_error("report contains a non-finite number at " + where);
  }
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) assert_finite(v, where + "/" + k);
  } else if (j.is_array()) {
    for (const auto& v : j) assert_finite(v, where + "[]");
  }
}

Json checks_json(const std::vector<Check>& checks) {
  Json arr = Json::array();
  for (const Check& c : checks) {
    arr.push_back({{"name", c.name},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"comparison", c.comparison},
                   {"pass", c.pass}});
  }
  return arr;
}

Check make_check(std::string name, double value, double threshold,
                 std::string comparison) {
  Check c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.comparison = std::move(comparison);
  c.pass = (c.comparison == "<=") ? (value <= threshold) : (value >= threshold);
  return c;
}

bool finalize(ExperimentReport& rep) {
  rep.pass = true;
  for (const Check& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep.pass;
}

Json tags_json(const DisorderSpec& spec) {
  Json arr = Json::array();
  for (Condition c : spec.condition_tags) {
    switch (c) {
      case Condition::LS: arr.push_back("LS"); break;
      case Condition::SG: arr.push_back("SG"); break;
      case Condition::M: arr.push_back("M"); break;
    }
  }
  return arr;
}

Json disorder_json(const DisorderSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  if (spec.lsi_constant.has_value()) {
    j["lsi_constant"] = *spec.lsi_constant;
  } else {
    j["lsi_constant"] = nullptr;
  }
  j["condition_tags"] = tags_json(spec);
  return j;
}

std::string sampling_mode_name(XSampling::Mode m) {
  switch (m) {
    case XSampling::Mode::sphere_uniform: return "sphere_uniform";
    case XSampling::Mode::ball_uniform: return "ball_uniform";
    case XSampling::Mode::radii_grid: return "radii_grid";
  }
  return "?";
}

// Deterministic point set for one (config, N); ball sampling with a rho floor
// retries with a bumped key until the floor is met.
std::vector<Point> sample_points(const ExperimentConfig& cfg, int N) {
  std::vector<Point> pts;
  const XSampling& xs = cfg.x_sampling;
  switch (xs.mode) {
    case XSampling::Mode::sphere_uniform:
      for (int j = 0; j < xs.n_points; ++j) {
        pts.push_back(sample_sphere_point(N, cfg.seed, j));
      }
      break;
    case XSampling::Mode::ball_uniform:
      for (int j = 0; j < xs.n_points; ++j) {
        for (std::uint64_t attempt = 0;; ++attempt) {
          Point p = sample_ball_point(
              N, cfg.seed, (attempt << 32) | static_cast<std::uint64_t>(j));
          if (p.rho() >= xs.min_rho) {
            pts.push_back(std::move(p));
            break;
          }
          if (attempt > 10000) throw ConfigError("min_rho is unreachable by ball sampling");
        }
      }
      break;
    case XSampling::Mode::radii_grid:
      if (xs.radii.empty()) throw ConfigError("radii_grid requires a radii list");
      for (std::size_t j = 0; j < xs.radii.size(); ++j) {
        pts.push_back(sample_point_at_rho(N, xs.radii[j], cfg.seed, j));
      }
      break;
  }
  return pts;
}

Json esd_artifact(double rho, const EmpiricalDistribution& dist) {
  Json j;
  j["rho"] = rho;
  j["eigenvalues"] = dist.values();
  return j;
}

// Descent statistics for one disorder kind under common trial seeds.
struct DescentStats {
  std::vector<double> terminal_per_site;
  std::vector<double> abs_per_site;
  std::vector<double> increment_alignment;
  std::vector<std::string> trace_csvs;
  std::string first_step_rule;
};

DescentStats descend_trials(const ExperimentConfig& cfg, const DisorderSpec& spec) {
  DescentStats stats;
  DescentConfig dc;
  dc.steps = cfg.K;
  dc.edge_eps = cfg.eps;
  for (int t = 0; t < cfg.trials; ++t) {
    const Model model = build_model(cfg.mixture, spec, cfg.N,
                                    rng::derive_seed(cfg.seed, tag_model, t));
    const DescentTrace trace =
        hessian_descent(model, dc, rng::derive_seed(cfg.seed, tag_descent, t));
    stats.terminal_per_site.push_back(trace.terminal_energy_per_site);
    stats.abs_per_site.push_back(std::fabs(trace.terminal_energy_per_site));
    std::vector<double> pred, act;
    for (const DescentStep& s : trace.steps) {
      if (s.k >= 1) {
        pred.push_back(s.predicted_increment);
        act.push_back(s.actual_increment);
      }
    }
    stats.increment_alignment.push_back(alignment(pred, act));
    stats.trace_csvs.push_back(trace.to_csv());
    stats.first_step_rule = trace.first_step_rule;
  }
  return stats;
}

// Edge masses for one disorder draw evaluated on a shared point set.
struct EdgeStats {
  std::vector<double> masses;       // per non-skipped point
  std::vector<Json> records;
  double delta = 0.0;
  int skipped = 0;
};

EdgeStats edge_pass(const ExperimentConfig& cfg, const DisorderSpec& spec,
                    const std::vector<Point>& points, int trial) {
  EdgeStats stats;
  stats.delta = delta_calibration(xi_eval(cfg.mixture, 1.0, 2), cfg.eps);
  const double floor = stats.delta / 4.0;
  const Model model = build_model(cfg.mixture, spec, cfg.N,
                                  rng::derive_seed(cfg.seed, tag_model, trial));
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double rho = points[j].rho();
    const double xi2 = xi_eval(cfg.mixture, rho, 2);
    Json rec;
    rec["trial"] = trial;
    rec["point"] = j;
    rec["rho"] = rho;
    if (!(xi2 > 0.0)) {
      rec["skipped"] = true;
      rec["reason"] = "xi''(rho)=0: edge threshold undefined";
      stats.records.push_back(std::move(rec));
      ++stats.skipped;
      continue;
    }
    const EmpiricalDistribution dist = esd(model, points[j], /*projected=*/true);
    const double mass = edge_mass(dist, xi2, cfg.eps);
    rec["threshold"] = -2.0 * std::sqrt(xi2) + cfg.eps;
    rec["edge_mass"] = mass;
    rec["floor"] = floor;
    rec["pass"] = mass >= floor;
    stats.records.push_back(std::move(rec));
    stats.masses.push_back(mass);
  }
  return stats;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(doc);
}

ExperimentConfig ExperimentConfig::from_json(const Json& doc) {
  try {
    if (!doc.contains("mixture") || !doc["mixture"].contains("gammas")) {
      throw ConfigError("config requires mixture.gammas");
    }
    std::map<int, double> gammas;
    for (const auto& [key, val] : doc["mixture"]["gammas"].items()) {
      gammas[std::stoi(key)] = val.get<double>();
    }
    ExperimentConfig cfg{MixtureSpec(std::move(gammas))};

    auto parse_disorder = [](const Json& j) {
      DisorderSpec spec =
          DisorderSpec::make(disorder_kind_from_string(j.at("kind").get<std::string>()));
      if (j.contains("lsi_constant") && j["lsi_constant"].is_number()) {
        spec.lsi_constant = j["lsi_constant"].get<double>();
      }
      return spec;
    };
    if (doc.contains("disorder")) cfg.disorder = parse_disorder(doc["disorder"]);
    if (doc.contains("disorders")) {
      for (const auto& j : doc["disorders"]) cfg.disorders.push_back(parse_disorder(j));
    }

    cfg.N = doc.value("N", cfg.N);
    if (doc.contains("N_grid")) cfg.N_grid = doc["N_grid"].get<std::vector<int>>();
    cfg.seed = doc.value("seed", cfg.seed);
    cfg.trials = doc.value("trials", cfg.trials);
    cfg.eps = doc.value("eps", cfg.eps);
    cfg.K = doc.value("K", cfg.K);
    if (doc.contains("moment_ks")) {
      cfg.moment_ks = doc["moment_ks"].get<std::vector<int>>();
    }
    cfg.output_dir = doc.value("output_dir", cfg.output_dir);

    if (doc.contains("x_sampling")) {
      const Json& xs = doc["x_sampling"];
      const std::string mode = xs.value("mode", "sphere_uniform");
      if (mode == "sphere_uniform") {
        cfg.x_sampling.mode = XSampling::Mode::sphere_uniform;
      } else if (mode == "ball_uniform") {
        cfg.x_sampling.mode = XSampling::Mode::ball_uniform;
      } else if (mode == "radii_grid") {
        cfg.x_sampling.mode = XSampling::Mode::radii_grid;
      } else {
        throw ConfigError("unknown x_sampling mode: " + mode);
      }
      cfg.x_sampling.n_points = xs.value("n_points", cfg.x_sampling.n_points);
      if (xs.contains("radii")) {
        cfg.x_sampling.radii = xs["radii"].get<std::vector<double>>();
      }
      cfg.x_sampling.min_rho = xs.value("min_rho", cfg.x_sampling.min_rho);
    }

    if (doc.contains("tolerances")) {
      const Json& t = doc["tolerances"];
      cfg.tol.w1 = t.value("w1", cfg.tol.w1);
      cfg.tol.moment_a = t.value("moment_a", cfg.tol.moment_a);
      cfg.tol.moment_b = t.value("moment_b", cfg.tol.moment_b);
      cfg.tol.edge_fraction = t.value("edge_fraction", cfg.tol.edge_fraction);
      cfg.tol.energy = t.value("energy", cfg.tol.energy);
      cfg.tol.universality_energy =
          t.value("universality_energy", cfg.tol.universality_energy);
      cfg.tol.universality_edge =
          t.value("universality_edge", cfg.tol.universality_edge);
      cfg.tol.concentration_ratio =
          t.value("concentration_ratio", cfg.tol.concentration_ratio);
    }

    if (cfg.N < 1) throw ConfigError("N must be >= 1");
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (!(cfg.eps > 0.0)) throw ConfigError("eps must be > 0");
    if (cfg.K < 2) throw ConfigError("K must be >= 2");
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config value: ") + e.what());
  }
}

Json ExperimentConfig::echo() const {
  Json j;
  Json gammas = Json::object();
  for (const auto& [p, g] : mixture.gammas()) gammas[std::to_string(p)] = g;
  j["mixture"] = {{"gammas", gammas}};
  j["disorder"] = disorder_json(disorder);
  if (!disorders.empty()) {
    Json arr = Json::array();
    for (const DisorderSpec& d : disorders) arr.push_back(disorder_json(d));
    j["disorders"] = arr;
  }
  j["N"] = N;
  if (!N_grid.empty()) j["N_grid"] = N_grid;
  j["seed"] = seed;
  j["trials"] = trials;
  j["eps"] = eps;
  j["K"] = K;
  j["moment_ks"] = moment_ks;
  j["x_sampling"] = {{"mode", sampling_mode_name(x_sampling.mode)},
                     {"n_points", x_sampling.n_points},
                     {"radii", x_sampling.radii},
                     {"min_rho", x_sampling.min_rho}};
  j["tolerances"] = {{"w1", tol.w1},
                     {"moment_a", tol.moment_a},
                     {"moment_b", tol.moment_b},
                     {"edge_fraction", tol.edge_fraction},
                     {"energy", tol.energy},
                     {"universality_energy", tol.universality_energy},
                     {"universality_edge", tol.universality_edge},
                     {"concentration_ratio", tol.concentration_ratio}};
  return j;
}

Json ExperimentReport::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["config"] = config_echo;
  j["records"] = records;
  j["summary"] = summary;
  j["checks"] = checks_json(checks);
  j["pass"] = pass;
  assert_finite(j, experiment);
  return j;
}

ExperimentReport run_spectrum(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.experiment = "spectrum";
  rep.config_echo = cfg.echo();

  const std::vector<Point> points = sample_points(cfg, cfg.N);
  std::vector<double> w1s;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Model model = build_model(cfg.mixture, cfg.disorder, cfg.N,
                                    rng::derive_seed(cfg.seed, tag_model, j));
    const double rho = points[j].rho();
    const double radius = 2.0 * std::sqrt(xi_eval(cfg.mixture, rho, 2));
    const EmpiricalDistribution dist = esd(model, points[j], /*projected=*/true);
    const double dist_w1 = w1_distance(dist, SemicircleLaw(radius));
    w1s.push_back(dist_w1);
    rep.records.push_back({{"point", j},
                           {"rho", rho},
                           {"reference_radius", radius},
                           {"w1", dist_w1}});
    rep.artifacts.emplace_back("esd_" + std::to_string(j) + ".json",
                               esd_artifact(rho, dist).dump(2) + "\n");
  }
  const double worst = *std::max_element(w1s.begin(), w1s.end());
  rep.summary["n_points"] = points.size();
  rep.summary["max_w1"] = worst;
  rep.summary["mean_w1"] = mean_of(w1s);
  rep.checks.push_back(make_check("w1_to_semicircle_max", worst, cfg.tol.w1, "<="));
  finalize(rep);
  rep.wall_clock_seconds = timer.seconds();
  return rep;
}

ExperimentReport run_moments(const ExperimentConfig& cfg) {
  Timer timer;
  if (cfg.moment_ks.empty()) throw ConfigError("moments: moment_ks must be nonempty");
  ExperimentReport rep;
  rep.experiment = "moments";
  rep.config_echo = cfg.echo();

  const std::vector<Point> all_points = sample_points(cfg, cfg.N);
  std::vector<Point> points;
  for (std::size_t j = 0; j < all_points.size(); ++j) {
    if (xi_eval(cfg.mixture, all_points[j].rho(), 2) > 0.0) {
      points.push_back(all_points[j]);
    } else {
      rep.records.push_back({{"point", j},
                             {"rho", all_points[j].rho()},
                             {"skipped", true},
                             {"reason", "xi''(rho)=0: normalization undefined"}});
    }
  }
  if (points.empty()) throw ConfigError("moments: no usable points (xi'' vanished)");

  const auto sweep = trace_moment_sweep(cfg.mixture, cfg.disorder, cfg.N, points,
                                        cfg.moment_ks, cfg.trials, cfg.seed);

  std::string csv = "point,rho,k,trial,normalized_euclidean\n";
  char line[160];
  std::map<int, double> worst_dev;
  for (std::size_t j = 0; j < points.size(); ++j) {
    for (std::size_t i = 0; i < cfg.moment_ks.size(); ++i) {
      const MomentPair& pair = sweep[j][i];
      const int k = cfg.moment_ks[i];
      const double tol_k = cfg.tol.moment_a / std::sqrt(static_cast<double>(cfg.trials) * cfg.N) +
                           cfg.tol.moment_b / cfg.N;
      const double dev = pair.euclidean.normalized - pair.euclidean.catalan_target;
      worst_dev[k] = std::max(worst_dev[k], std::fabs(dev));
      rep.records.push_back({{"point", j},
                             {"rho", points[j].rho()},
                             {"k", k},
                             {"normalized", pair.euclidean.normalized},
                             {"normalized_projected", pair.projected.normalized},
                             {"catalan_target", pair.euclidean.catalan_target},
                             {"deviation", dev},
                             {"tolerance", tol_k},
                             {"pass", std::fabs(dev) <= tol_k}});
      for (int t = 0; t < cfg.trials; ++t) {
        std::snprintf(line, sizeof(line), "%zu,%.17g,%d,%d,%.17g\n", j,
                      points[j].rho(), k, t, pair.per_trial_euclidean[t]);
        csv += line;
      }
    }
  }
  rep.artifacts.emplace_back("moments.csv", csv);
  for (const auto& [k, dev] : worst_dev) {
    const double tol_k = cfg.tol.moment_a / std::sqrt(static_cast<double>(cfg.trials) * cfg.N) +
                         cfg.tol.moment_b / cfg.N;
    rep.checks.push_back(
        make_check("moment_k" + std::to_string(k) + "_deviation_max", dev, tol_k, "<="));
  }
  rep.summary["trials"] = cfg.trials;
  rep.summary["n_points"] = points.size();
  finalize(rep);
  rep.wall_clock_seconds = timer.seconds();
  return rep;
}

ExperimentReport run_edge(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.experiment = "edge";
  rep.config_echo = cfg.echo();

  const std::vector<Point> points = sample_points(cfg, cfg.N);
  std::vector<double> masses;
  int passing = 0, total = 0, skipped = 0;
  double delta = 0.0;
  for (int t = 0; t < cfg.trials; ++t) {
    EdgeStats stats = edge_pass(cfg, cfg.disorder, points, t);
    delta = stats.delta;
    skipped += stats.skipped;
    for (Json& rec : stats.records) {
      if (!rec.contains("skipped")) {
        ++total;
        if (rec["pass"].get<bool>()) ++passing;
      }
      rep.records.push_back(std::move(rec));
    }
    masses.insert(masses.end(), stats.masses.begin(), stats.masses.end());
  }
  if (masses.empty()) throw ConfigError("edge: every sampled point was skipped");

  const double fraction = static_cast<double>(passing) / total;
  rep.summary["delta_calibrated"] = delta;
  rep.summary["mass_floor"] = delta / 4.0;
  rep.summary["fraction_passing"] = fraction;
  rep.summary["min_mass"] = *std::min_element(masses.begin(), masses.end());
  rep.summary["mean_mass"] = mean_of(masses);
  rep.summary["skipped_points"] = skipped;
  if (masses.size() >= 2) rep.summary["mass_std"] = sample_std(masses);
  rep.checks.push_back(
      make_check("edge_fraction_passing", fraction, cfg.tol.edge_fraction, ">="));
  finalize(rep);
  rep.wall_clock_seconds = timer.seconds();
  return rep;
}

ExperimentReport run_descent(const ExperimentConfig& cfg) {
  Timer timer;
  ExperimentReport rep;
  rep.experiment = "descent";
  rep.config_echo = cfg.echo();

  const double target = ground_state_target(cfg.mixture);
  const FullRsbResult rsb = full_rsb_check(cfg.mixture);
  const DescentStats stats = descend_trials(cfg, cfg.disorder);

  for (int t = 0; t < cfg.trials; ++t) {
    rep.records.push_back(
        {{"trial", t},
         {"terminal_energy_per_site", stats.terminal_per_site[t]},
         {"abs_gap_to_target", std::fabs(stats.abs_per_site[t] - target)},
         {"increment_alignment", stats.increment_alignment[t]}});
    rep.artifacts.emplace_back("descent_trace_" + std::to_string(t) + ".csv",
                               stats.trace_csvs[t]);
  }
  const double mean_abs = mean_of(stats.abs_per_site);
  rep.summary["target_energy_per_site"] = target;
  rep.summary["mean_terminal_energy_per_site"] = mean_of(stats.terminal_per_site);
  rep.summary["mean_abs_energy_per_site"] = mean_abs;
  if (cfg.trials >= 2) {
    rep.summary["std_terminal_energy_per_site"] = sample_std(stats.terminal_per_site);
  }
  rep.summary["mean_increment_alignment"] = mean_of(stats.increment_alignment);
  rep.summary["full_rsb"] = {{"is_concave", rsb.is_concave},
                             {"worst_violation", rsb.worst_violation}};
  rep.summary["first_step_rule"] = stats.first_step_rule;
  rep.checks.push_back(make_check("abs_energy_gap_to_target",
                                  std::fabs(mean_abs - target), cfg.tol.energy,
                                  "<="));
  finalize(rep);
  rep.wall_clock_seconds = timer.seconds();
  return rep;
}

ExperimentReport run_universality(const ExperimentConfig& cfg) {
  Timer timer;
  if (cfg.disorders.size() < 2) {
    throw ConfigError("universality: at least two disorder kinds required");
  }
  ExperimentReport rep;
  rep.experiment = "universality";
  rep.config_echo = cfg.echo();

  const std::vector<Point> points = sample_points(cfg, cfg.N);
  struct KindResult {
    std::string kind;
    double mean_energy = 0.0;
    double mean_mass = 0.0;
  };
  std::vector<KindResult> results;
  for (const DisorderSpec& spec : cfg.disorders) {
    const DescentStats dstats = descend_trials(cfg, spec);
    const EdgeStats estats = edge_pass(cfg, spec, points, /*trial=*/0);
    if (estats.masses.empty()) {
      throw ConfigError("universality: every edge point was skipped");
    }
    KindResult res;
    res.kind = to_string(spec.kind);
    res.mean_energy = mean_of(dstats.terminal_per_site);
    res.mean_mass = mean_of(estats.masses);
    results.push_back(res);
    rep.records.push_back({{"kind", res.kind},
                           {"condition_tags", tags_json(spec)},
                           {"mean_terminal_energy_per_site", res.mean_energy},
                           {"mean_edge_mass", res.mean_mass}});
  }

  const KindResult& base = results.front();
  for (std::size_t i = 1; i < results.size(); ++i) {
    const double de = std::fabs(results[i].mean_energy - base.mean_energy);
    const double dm = std::fabs(results[i].mean_mass - base.mean_mass);
    const std::string label = base.kind + "_vs_" + results[i].kind;
    rep.checks.push_back(make_check("energy_gap_" + label, de,
                                    cfg.tol.universality_energy, "<="));
    rep.checks.push_back(
        make_check("edge_mass_gap_" + label, dm, cfg.tol.universality_edge, "<="));
  }
  rep.summary["baseline_kind"] = base.kind;
  rep.summary["n_kinds"] = results.size();
  finalize(rep);
  rep.wall_clock_seconds = timer.seconds();
  return rep;
}

ExperimentReport run_concentration(const ExperimentConfig& cfg) {
  Timer timer;
  if (cfg.N_grid.size() < 2) {
    throw ConfigError("concentration: N_grid needs at least two sizes");
  }
  if (cfg.trials < 2) {
    throw ConfigError("concentration: std undefined for trials < 2");
  }
  ExperimentReport rep;
  rep.experiment = "concentration";
  rep.config_echo = cfg.echo();

  // Smoothed edge indicator at rho = 1: 1 below the threshold minus eps/2,
  // 0 above the threshold, linear between; Lipschitz constant 2/eps.
  const double xi2 = xi_eval(cfg.mixture, 1.0, 2);
  const double base = -2.0 * std::sqrt(xi2);
  const double eps = cfg.eps;
  auto f = [base, eps](double y) {
    if (y <= base + 0.5 * eps) return 1.0;
    if (y >= base + eps) return 0.0;
    return (-2.0 / eps) * (y - base - 0.5 * eps) + 1.0;
  };

  double c_gamma_sq = 0.0;
  for (const auto& [p, g] : cfg.mixture.gammas()) {
    const double term = g * static_cast<double>(p) * (p - 1);
    c_gamma_sq += term * term;
  }

  std::vector<int> sizes = cfg.N_grid;
  std::sort(sizes.begin(), sizes.end());
  std::vector<double> stds;
  for (int n : sizes) {
    const std::uint64_t size_seed = rng::derive_seed(cfg.seed, tag_size, n);
    const Point x = sample_sphere_point(n, size_seed, 0);
    std::vector<double> values;
    for (int t = 0; t < cfg.trials; ++t) {
      const Model model = build_model(cfg.mixture, cfg.disorder, n,
                                      rng::derive_seed(size_seed, tag_model, t));
      const EmpiricalDistribution dist = esd(model, x, /*projected=*/true);
      double stat = 0.0;
      for (double lambda : dist.values()) stat += f(lambda);
      values.push_back(stat / n);
    }
    const double sd = sample_std(values);
    stds.push_back(sd);
    rep.records.push_back({{"N", n},
                           {"statistic_mean", mean_of(values)},
                           {"statistic_std", sd},
                           {"trials", cfg.trials}});
  }

  const double ratio = stds.front() / stds.back();
  rep.summary["lipschitz_constant"] = 2.0 / eps;
  rep.summary["c_gamma"] = std::sqrt(c_gamma_sq);
  rep.summary["std_ratio_small_over_large"] = ratio;
  rep.checks.push_back(
      make_check("std_decay_ratio", ratio, cfg.tol.concentration_ratio, ">="));
  finalize(rep);
  rep.wall_clock_seconds = timer.seconds();
  return rep;
}

Json mixture_info(const ExperimentConfig& cfg) {
  Json j;
  Json gammas = Json::object();
  for (const auto& [p, g] : cfg.mixture.gammas()) gammas[std::to_string(p)] = g;
  j["gammas"] = gammas;
  j["p_max"] = cfg.mixture.p_max();
  j["xi_at_1"] = xi_eval(cfg.mixture, 1.0, 0);
  j["xi_prime_at_1"] = xi_eval(cfg.mixture, 1.0, 1);
  j["xi_second_at_1"] = xi_eval(cfg.mixture, 1.0, 2);
  j["descent_energy_target"] = ground_state_target(cfg.mixture);
  const FullRsbResult rsb = full_rsb_check(cfg.mixture);
  j["full_rsb"] = {{"is_concave", rsb.is_concave},
                   {"worst_violation", rsb.worst_violation}};
  if (!rsb.reason.empty()) j["full_rsb"]["reason"] = rsb.reason;
  return j;
}

ExperimentReport run_experiment(const std::string& name,
                                const ExperimentConfig& cfg) {
  if (name == "spectrum") return run_spectrum(cfg);
  if (name == "moments") return run_moments(cfg);
  if (name == "edge") return run_edge(cfg);
  if (name == "descent") return run_descent(cfg);
  if (name == "universality") return run_universality(cfg);
  if (name == "concentration") return run_concentration(cfg);
  throw ConfigError("unknown experiment: " + name);
}

void write_report(const ExperimentReport& report, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  {
    std::ofstream out(fs::path(out_dir) / "report.json", std::ios::binary);
    if (!out) throw IoError("cannot write report.json in " + out_dir);
    out << report.to_json().dump(2) << "\n";
  }
  for (const auto& [name, bytes] : report.artifacts) {
    std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
    if (!out) throw IoError("cannot write artifact " + name);
    out << bytes;
  }
  {
    // Wall clock lives outside report.json so reruns stay byte-identical.
    std::ofstream out(fs::path(out_dir) / "timing.txt", std::ios::binary);
    out << report.experiment << " wall_clock_seconds "
        << report.wall_clock_seconds << "\n";
  }
}

}  // namespace glasslab
