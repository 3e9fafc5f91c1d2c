#include "glasslab/mixture.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "glasslab/quadrature.hpp"

namespace glasslab {

MixtureSpec::MixtureSpec(std::map<int, double> gammas) {
  for (const auto& [p, g] : gammas) {
    if (p < 2) throw std::invalid_argument("MixtureSpec: orders start at p=2");
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("MixtureSpec: coefficients must be finite and >= 0");
    }
    if (g > 0.0) {
      gammas_[p] = g;
      p_max_ = std::max(p_max_, p);
    }
  }
  if (gammas_.empty()) {
    throw std::invalid_argument("MixtureSpec: at least one positive coefficient required");
  }
}

MixtureSpec MixtureSpec::pure(int p, double gamma) {
  return MixtureSpec({{p, gamma}});
}

double MixtureSpec::gamma(int p) const {
  auto it = gammas_.find(p);
  return it == gammas_.end() ? 0.0 : it->second;
}

MixtureSpec MixtureSpec::truncated(int p1) const {
  if (p1 < 2 || p1 > p_max_) {
    throw std::invalid_argument("MixtureSpec::truncated: p1 out of range");
  }
  std::map<int, double> kept;
  for (const auto& [p, g] : gammas_) {
    if (p <= p1) kept[p] = g;
  }
  return MixtureSpec(std::move(kept));
}

double xi_eval(const MixtureSpec& m, double z, int order) {
  if (order < 0 || order > 2) {
    throw std::invalid_argument("xi_eval: order must be 0, 1 or 2");
  }
  if (std::fabs(z) > 1.0) {
    throw std::domain_error("xi_eval: |z| must not exceed 1");
  }
  double sum = 0.0;
  for (const auto& [p, g] : m.gammas()) {
    double factor = g * g;
    if (order >= 1) factor *= p;
    if (order >= 2) factor *= (p - 1);
    sum += factor * std::pow(z, p - order);
  }
  return sum;
}

double ground_state_target(const MixtureSpec& m, int quad_points) {
  if (quad_points < 16) {
    throw std::invalid_argument("ground_state_target: quad_points must be >= 16");
  }
  auto integrand = [&m](double t) { return std::sqrt(xi_eval(m, t, 2)); };
  return quad::integrate(integrand, 0.0, 1.0, quad_points,
                         /*graded_left=*/true, /*graded_right=*/false);
}

FullRsbResult full_rsb_check(const MixtureSpec& m, int grid_size) {
  if (grid_size < 3) {
    throw std::invalid_argument("full_rsb_check: grid_size must be >= 3");
  }
  auto g = [&m](double q) {
    const double x2 = xi_eval(m, q, 2);
    if (!(x2 > 0.0)) {
      throw std::domain_error("full_rsb_check: xi'' vanishes on the grid");
    }
    return 1.0 / std::sqrt(x2);
  };

  double scale = 0.0;
  for (int i = 1; i <= grid_size; ++i) {
    scale = std::max(scale, g(static_cast<double>(i) / grid_size));
  }
  const double tol = 1e-12 * scale;

  FullRsbResult res;
  res.worst_violation = std::numeric_limits<double>::infinity();
  for (int i = 1; i < grid_size; ++i) {
    const double a = static_cast<double>(i) / grid_size;
    const double b = static_cast<double>(i + 1) / grid_size;
    const double slack = g(0.5 * (a + b)) - 0.5 * (g(a) + g(b));
    res.worst_violation = std::min(res.worst_violation, slack);
  }
  res.is_concave = res.worst_violation >= -tol;
  if (!res.is_concave) {
    res.reason = (m.gamma(2) == 0.0)
                     ? "xi''(q)^{-1/2} is unbounded as q -> 0 and convex near the origin"
                     : "midpoint concavity violated on the grid";
  }
  return res;
}

}  // namespace glasslab
