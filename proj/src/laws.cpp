#include "glasslab/laws.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "glasslab/quadrature.hpp"

namespace glasslab {

namespace {

constexpr int w1_panels = 10'000;

// |F_a - F_b| integrated over [lo, hi] with Simpson panels on a fixed grid.
template <typename Fa, typename Fb>
double cdf_area(Fa fa, Fb fb, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  const double h = (hi - lo) / w1_panels;
  auto diff = [&](double y) { return std::fabs(fa(y) - fb(y)); };
  double sum = 0.0;
  double left = diff(lo);
  for (int k = 0; k < w1_panels; ++k) {
    const double a = lo + k * h;
    const double m = diff(a + 0.5 * h);
    const double right = diff(a + h);
    sum += (h / 6.0) * (left + 4.0 * m + right);
    left = right;
  }
  return sum;
}

}  // namespace

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("EmpiricalDistribution: at least one value required");
  }
  std::sort(values_.begin(), values_.end());
}

double EmpiricalDistribution::cdf(double y) const {
  const auto it = std::upper_bound(values_.begin(), values_.end(), y);
  return static_cast<double>(it - values_.begin()) / values_.size();
}

double EmpiricalDistribution::moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment: k must be >= 0");
  double sum = 0.0;
  for (double v : values_) sum += std::pow(v, k);
  return sum / values_.size();
}

SemicircleLaw::SemicircleLaw(double r) : radius(r) {
  if (!(r > 0.0)) throw std::invalid_argument("SemicircleLaw: radius must be > 0");
}

double semicircle_cdf(const SemicircleLaw& law, double y) {
  const double r = law.radius;
  if (y <= -r) return 0.0;
  if (y >= r) return 1.0;
  const double val = 0.5 + y * std::sqrt(r * r - y * y) / (std::numbers::pi * r * r) +
                     std::asin(y / r) / std::numbers::pi;
  return std::clamp(val, 0.0, 1.0);
}

double catalan_target(int k) {
  if (k < 0) throw std::invalid_argument("catalan_target: k must be >= 0");
  if (k % 2 == 1) return 0.0;
  const int n = k / 2;
  // C_n = binom(2n, n)/(n+1), built multiplicatively to stay exact.
  double c = 1.0;
  for (int i = 0; i < n; ++i) {
    c = c * (2.0 * (2 * i + 1)) / (i + 2);
  }
  return c;
}

double w1_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  // Both CDFs are step functions; the area is exact on the merged grid.
  std::vector<double> grid;
  grid.reserve(a.values().size() + b.values().size());
  grid.insert(grid.end(), a.values().begin(), a.values().end());
  grid.insert(grid.end(), b.values().begin(), b.values().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    area += std::fabs(a.cdf(grid[i]) - b.cdf(grid[i])) * (grid[i + 1] - grid[i]);
  }
  return area;
}

double w1_distance(const EmpiricalDistribution& a, const SemicircleLaw& b) {
  const double lo = std::min(a.min(), -b.radius);
  const double hi = std::max(a.max(), b.radius);
  return cdf_area([&a](double y) { return a.cdf(y); },
                  [&b](double y) { return semicircle_cdf(b, y); }, lo, hi);
}

double w1_distance(const SemicircleLaw& a, const EmpiricalDistribution& b) {
  return w1_distance(b, a);
}

double w1_distance(const SemicircleLaw& a, const SemicircleLaw& b) {
  const double lo = -std::max(a.radius, b.radius);
  const double hi = std::max(a.radius, b.radius);
  return cdf_area([&a](double y) { return semicircle_cdf(a, y); },
                  [&b](double y) { return semicircle_cdf(b, y); }, lo, hi);
}

double edge_mass(const EmpiricalDistribution& d, double xi2_at_rho, double eps) {
  if (!(xi2_at_rho >= 0.0)) {
    throw std::invalid_argument("edge_mass: xi2_at_rho must be >= 0");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("edge_mass: eps must be > 0");
  return d.mass_below(-2.0 * std::sqrt(xi2_at_rho) + eps);
}

double delta_calibration(double xi2_at_1, double eps) {
  if (!(xi2_at_1 > 0.0)) {
    throw std::invalid_argument("delta_calibration: xi2_at_1 must be > 0");
  }
  if (!(eps > 0.0)) throw std::invalid_argument("delta_calibration: eps must be > 0");
  const double upper = -2.0 + eps / (2.0 * std::sqrt(xi2_at_1));
  if (upper >= 2.0) return 1.0;
  auto density = [](double t) { return std::sqrt(4.0 - t * t); };
  const double integral =
      quad::integrate(density, -2.0, upper, 32, /*graded_left=*/true,
                      /*graded_right=*/upper > 1.5);
  return integral / (2.0 * std::numbers::pi);
}

ComparisonBound semicircle_comparison_bound(double r1, double r2) {
  if (!(r1 > 0.0) || r1 > r2) {
    throw std::invalid_argument("semicircle_comparison_bound: need 0 < R1 <= R2");
  }
  ComparisonBound out{};
  out.distance = w1_distance(SemicircleLaw(r1), SemicircleLaw(r2));
  out.bound = 2.0 * (1.0 - (r1 * r1) / (r2 * r2));
  out.holds = out.distance < out.bound + 1e-9;
  return out;
}

}  // namespace glasslab
