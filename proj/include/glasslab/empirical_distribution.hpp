#ifndef GLASSLAB_EMPIRICAL_DISTRIBUTION_HPP
#define GLASSLAB_EMPIRICAL_DISTRIBUTION_HPP

#include <vector>

namespace glasslab {

/// Uniform measure on a finite sample, stored sorted ascending.
class EmpiricalDistribution {
 public:
  explicit EmpiricalDistribution(std::vector<double> values);

  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  /// P(X <= y), right-continuous.
  double cdf(double y) const;

  /// Fraction of the sample at or below y (same as cdf; kept for readability
  /// at edge-mass call sites).
  double mass_below(double y) const { return cdf(y); }

  /// k-th raw moment (mean of values^k).
  double moment(int k) const;

 private:
  std::vector<double> values_;
};

}  // namespace glasslab

#endif
