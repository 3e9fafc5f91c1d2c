#ifndef GLASSLAB_DISORDER_HPP
#define GLASSLAB_DISORDER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace glasslab {

/// Regularity conditions a coefficient distribution can satisfy, ordered by
/// strength: a log-Sobolev bound implies sub-Gaussianity implies all moments.
enum class Condition { LS, SG, M };

enum class DisorderKind { gaussian, uniform_sym, rademacher, truncated_gaussian };

std::string to_string(DisorderKind k);
DisorderKind disorder_kind_from_string(const std::string& s);

/// One coefficient distribution, normalized to mean 0 and variance 1.
///   gaussian            standard normal
///   uniform_sym         uniform on [-sqrt(3), sqrt(3)]
///   rademacher          +/-1 with equal probability
///   truncated_gaussian  standard normal conditioned to [-4,4], rescaled to
///                       unit variance
/// lsi_constant is present exactly for the kinds carrying the LS tag; for the
/// non-Gaussian ones it is an estimate recorded as metadata, not a sharp
/// constant. Rademacher fails the derivative-form log-Sobolev condition and
/// carries {SG, M} only.
struct DisorderSpec {
  DisorderKind kind = DisorderKind::gaussian;
  std::optional<double> lsi_constant;
  std::set<Condition> condition_tags;
  double truncation_level = 4.0;  // used by truncated_gaussian only

  static DisorderSpec make(DisorderKind kind);
};

/// Flat coefficient array for one interaction order: length N^p, row-major in
/// (i_1,...,i_p). Regenerating from (spec, p, N, seed) reproduces the array
/// bit-exactly; every entry is keyed on (seed, p, flat index) alone.
class DisorderTensor {
 public:
  DisorderTensor(DisorderSpec spec, int order, int dim, std::uint64_t seed,
                 std::vector<double> coeffs);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::uint64_t seed() const { return seed_; }
  const DisorderSpec& spec() const { return spec_; }
  std::span<const double> coeffs() const { return coeffs_; }
  const double* data() const { return coeffs_.data(); }

 private:
  DisorderSpec spec_;
  int order_;
  int dim_;
  std::uint64_t seed_;
  std::vector<double> coeffs_;
};

/// Thrown when N^p would exceed the coefficient budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& msg, double requested)
      : std::runtime_error(msg), requested_coeffs(requested) {}
  double requested_coeffs;
};

inline constexpr std::size_t default_coeff_budget = 200'000'000;

/// i.i.d. coefficient array of length N^p under spec's distribution.
std::shared_ptr<const DisorderTensor> sample_tensor(
    const DisorderSpec& spec, int p, int N, std::uint64_t seed,
    std::size_t coeff_budget = default_coeff_budget);

/// Average of the coefficients over all p! index permutations (repeated
/// indices are averaged with multiplicity, i.e. the raw 1/p! sum over the
/// symmetric group). idx entries are 1-based.
double sym_coeff(const DisorderTensor& t, std::span<const int> idx);

struct MgfPoint {
  double s = 0.0;
  double empirical_log_mgf = 0.0;
  double bound = 0.0;       // K s^2 / 2
  double k_used = 0.0;      // declared K, or fitted smallest K on the grid
  bool k_fitted = false;
};

/// Empirical log-MGF log(mean exp(sX)) against the sub-Gaussian envelope
/// K s^2 / 2 on a grid of s values. Kinds without a declared constant get the
/// smallest K fitting the whole grid. |s| is capped at 10 to keep exp() sane.
std::vector<MgfPoint> subgaussian_diagnostic(const DisorderSpec& spec,
                                             std::span<const double> s_grid,
                                             int n_samples, std::uint64_t seed);

/// One scalar draw from spec's distribution for the given key (exposed for
/// samplers that need single variates under the same transforms).
double sample_value(const DisorderSpec& spec, std::uint64_t hashed);

}  // namespace glasslab

#endif
