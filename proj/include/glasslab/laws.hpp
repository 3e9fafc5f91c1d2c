#ifndef GLASSLAB_LAWS_HPP
#define GLASSLAB_LAWS_HPP

#include "glasslab/empirical_distribution.hpp"

namespace glasslab {

/// Semicircle law with density (2/(pi R^2)) sqrt(R^2 - y^2) on [-R, R].
struct SemicircleLaw {
  double radius;
  explicit SemicircleLaw(double r);
};

/// Closed-form CDF 1/2 + y sqrt(R^2-y^2)/(pi R^2) + asin(y/R)/pi, clamped to
/// [0,1] outside the support.
double semicircle_cdf(const SemicircleLaw& law, double y);

/// k/2-th Catalan number for even k, 0 for odd k.
double catalan_target(int k);

/// Wasserstein-1 distance, i.e. the integral of |F_a - F_b|. Between two
/// empirical distributions this is computed exactly on the merged breakpoint
/// grid; any comparison involving a semicircle law uses fixed-panel
/// quadrature (10^4 panels) so reported numbers are reproducible.
/// On probability measures over the line this equals the bounded-Lipschitz
/// dual distance with the sup-norm constraint dropped; the constant offset of
/// a bounded test function cancels between the two integrals, so the
/// identification is exact for the comparisons made here.
double w1_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);
double w1_distance(const EmpiricalDistribution& a, const SemicircleLaw& b);
double w1_distance(const SemicircleLaw& a, const EmpiricalDistribution& b);
double w1_distance(const SemicircleLaw& a, const SemicircleLaw& b);

/// Fraction of the sample at or below -2 sqrt(xi2_at_rho) + eps.
double edge_mass(const EmpiricalDistribution& d, double xi2_at_rho, double eps);

/// Mass the standard semicircle puts on [-2, -2 + eps/(2 sqrt(xi2_at_1))],
/// by quadrature, capped at 1 when the window covers the whole support. This
/// is the model-dependent lower-bound scale for the spectral edge mass.
double delta_calibration(double xi2_at_1, double eps);

struct ComparisonBound {
  double distance;
  double bound;
  bool holds;
};

/// Distance between two semicircle laws against the envelope
/// 2 (1 - R1^2/R2^2); holds iff distance < bound + 1e-9.
ComparisonBound semicircle_comparison_bound(double r1, double r2);

}  // namespace glasslab

#endif
