#ifndef GLASSLAB_QUADRATURE_HPP
#define GLASSLAB_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace glasslab::quad {

// Gauss-Legendre nodes and weights on [-1,1]; cached per order.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int n);

// Integral of f over [a,b] with one n-point rule.
double gauss_panel(const std::function<double(double)>& f, double a, double b,
                   int n);

// Composite Gauss-Legendre over [a,b]. Endpoints flagged singular get a
// dyadically graded panel sequence (panel widths shrink geometrically toward
// the endpoint), which restores full accuracy for integrands with power-law
// behavior such as sqrt(t - a). Smooth endpoints use a handful of uniform
// panels.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int points_per_panel, bool graded_left, bool graded_right);

}  // namespace glasslab::quad

#endif
