#include "glasslab/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "glasslab/rng.hpp"

namespace glasslab {

namespace {

constexpr double sqrt3 = 1.7320508075688772935;

// Variance of a standard normal conditioned to [-a,a]:
// 1 - 2 a phi(a) / (2 Phi(a) - 1).
double truncated_normal_sd(double a) {
  const double phi_a = std::exp(-0.5 * a * a) / std::sqrt(2.0 * 3.14159265358979323846);
  const double mass = 2.0 * rng::normal_cdf(a) - 1.0;
  return std::sqrt(1.0 - 2.0 * a * phi_a / mass);
}

}  // namespace

std::string to_string(DisorderKind k) {
  switch (k) {
    case DisorderKind::gaussian: return "gaussian";
    case DisorderKind::uniform_sym: return "uniform_sym";
    case DisorderKind::rademacher: return "rademacher";
    case DisorderKind::truncated_gaussian: return "truncated_gaussian";
  }
  throw std::logic_error("to_string: unknown disorder kind");
}

DisorderKind disorder_kind_from_string(const std::string& s) {
  if (s == "gaussian") return DisorderKind::gaussian;
  if (s == "uniform_sym") return DisorderKind::uniform_sym;
  if (s == "rademacher") return DisorderKind::rademacher;
  if (s == "truncated_gaussian") return DisorderKind::truncated_gaussian;
  throw std::invalid_argument("unknown disorder kind: " + s);
}

DisorderSpec DisorderSpec::make(DisorderKind kind) {
  DisorderSpec spec;
  spec.kind = kind;
  switch (kind) {
    case DisorderKind::gaussian:
      spec.lsi_constant = 1.0;  // exact for the standard normal
      spec.condition_tags = {Condition::LS, Condition::SG, Condition::M};
      break;
    case DisorderKind::uniform_sym:
      spec.lsi_constant = 3.0;  // conservative bounded-support estimate
      spec.condition_tags = {Condition::LS, Condition::SG, Condition::M};
      break;
    case DisorderKind::truncated_gaussian:
      spec.lsi_constant = 1.1;  // estimate; close to the Gaussian constant
      spec.condition_tags = {Condition::LS, Condition::SG, Condition::M};
      break;
    case DisorderKind::rademacher:
      // No derivative-form log-Sobolev bound; sub-Gaussian with K = 1 via
      // log cosh(s) <= s^2/2, but the constant is not declared as an LS one.
      spec.lsi_constant = std::nullopt;
      spec.condition_tags = {Condition::SG, Condition::M};
      break;
  }
  return spec;
}

DisorderTensor::DisorderTensor(DisorderSpec spec, int order, int dim,
                               std::uint64_t seed, std::vector<double> coeffs)
    : spec_(std::move(spec)), order_(order), dim_(dim), seed_(seed),
      coeffs_(std::move(coeffs)) {
  double expect = 1.0;
  for (int i = 0; i < order_; ++i) expect *= dim_;
  if (static_cast<double>(coeffs_.size()) != expect) {
    throw std::invalid_argument("DisorderTensor: coefficient count must equal N^p");
  }
}

double sample_value(const DisorderSpec& spec, std::uint64_t hashed) {
  const double u = rng::uniform01(hashed);
  switch (spec.kind) {
    case DisorderKind::gaussian:
      return rng::inverse_normal_cdf(u);
    case DisorderKind::uniform_sym:
      return sqrt3 * (2.0 * u - 1.0);
    case DisorderKind::rademacher:
      return u < 0.5 ? -1.0 : 1.0;
    case DisorderKind::truncated_gaussian: {
      const double a = spec.truncation_level;
      const double lo = rng::normal_cdf(-a);
      const double hi = rng::normal_cdf(a);
      const double z = rng::inverse_normal_cdf(lo + u * (hi - lo));
      return z / truncated_normal_sd(a);
    }
  }
  throw std::logic_error("sample_value: unknown disorder kind");
}

std::shared_ptr<const DisorderTensor> sample_tensor(const DisorderSpec& spec,
                                                    int p, int N,
                                                    std::uint64_t seed,
                                                    std::size_t coeff_budget) {
  if (p < 2) throw std::invalid_argument("sample_tensor: p must be >= 2");
  if (N < 1) throw std::invalid_argument("sample_tensor: N must be >= 1");
  const double requested = std::pow(static_cast<double>(N), p);
  if (requested > static_cast<double>(coeff_budget)) {
    throw BudgetError("sample_tensor: N^p = " + std::to_string(requested) +
                          " coefficients exceeds the budget of " +
                          std::to_string(coeff_budget),
                      requested);
  }
  const std::size_t count = static_cast<std::size_t>(requested + 0.5);
  std::vector<double> coeffs(count);
  for (std::size_t i = 0; i < count; ++i) {
    coeffs[i] = sample_value(
        spec, rng::key(seed, rng::stream_tensor, static_cast<std::uint64_t>(p), i));
  }
  return std::make_shared<DisorderTensor>(spec, p, N, seed, std::move(coeffs));
}

double sym_coeff(const DisorderTensor& t, std::span<const int> idx) {
  const int p = t.order();
  if (static_cast<int>(idx.size()) != p) {
    throw std::invalid_argument("sym_coeff: index tuple length must equal the order");
  }
  for (int v : idx) {
    if (v < 1 || v > t.dim()) throw std::out_of_range("sym_coeff: index out of range");
  }
  // Permute positions, not values, so repeated indices keep full multiplicity.
  // The visited flat indices are summed in sorted order, which makes the
  // result exactly invariant under permutations of idx (same addends, same
  // order).
  std::vector<int> pos(p);
  std::iota(pos.begin(), pos.end(), 0);
  const std::size_t N = static_cast<std::size_t>(t.dim());
  std::vector<std::size_t> flats;
  do {
    std::size_t flat = 0;
    for (int q = 0; q < p; ++q) flat = flat * N + (idx[pos[q]] - 1);
    flats.push_back(flat);
  } while (std::next_permutation(pos.begin(), pos.end()));
  std::sort(flats.begin(), flats.end());
  const double* c = t.data();
  double sum = 0.0;
  for (std::size_t flat : flats) sum += c[flat];
  return sum / static_cast<double>(flats.size());
}

std::vector<MgfPoint> subgaussian_diagnostic(const DisorderSpec& spec,
                                             std::span<const double> s_grid,
                                             int n_samples, std::uint64_t seed) {
  if (n_samples < 1000) {
    throw std::invalid_argument("subgaussian_diagnostic: n_samples must be >= 1000");
  }
  for (double s : s_grid) {
    if (std::fabs(s) > 10.0) {
      throw std::invalid_argument("subgaussian_diagnostic: |s| must be <= 10");
    }
  }
  std::vector<double> draws(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    draws[i] = sample_value(
        spec, rng::key(seed, rng::stream_diagnostic, 0, static_cast<std::uint64_t>(i)));
  }

  std::vector<MgfPoint> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    double mean = 0.0;
    for (double x : draws) mean += std::exp(s * x);
    mean /= n_samples;
    MgfPoint pt;
    pt.s = s;
    pt.empirical_log_mgf = std::log(mean);
    out.push_back(pt);
  }

  double k_used;
  bool fitted = false;
  if (spec.lsi_constant.has_value()) {
    k_used = *spec.lsi_constant;
  } else {
    // Smallest K with log-MGF <= K s^2 / 2 across the grid.
    k_used = 0.0;
    for (const MgfPoint& pt : out) {
      if (pt.s != 0.0) {
        k_used = std::max(k_used, 2.0 * pt.empirical_log_mgf / (pt.s * pt.s));
      }
    }
    fitted = true;
  }
  for (MgfPoint& pt : out) {
    pt.k_used = k_used;
    pt.k_fitted = fitted;
    pt.bound = 0.5 * k_used * pt.s * pt.s;
  }
  return out;
}

}  // namespace glasslab
