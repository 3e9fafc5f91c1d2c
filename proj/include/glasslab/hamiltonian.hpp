#ifndef GLASSLAB_HAMILTONIAN_HPP
#define GLASSLAB_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <memory>

#include "glasslab/disorder.hpp"
#include "glasslab/mixture.hpp"

namespace glasslab {

/// Location in the ball of squared radius N. rho = |x|^2 / N lies in [0,1].
class Point {
 public:
  explicit Point(Eigen::VectorXd coords);

  static Point origin(int N);
  static Point north_pole(int N);  // (0,...,0,sqrt(N))

  const Eigen::VectorXd& coords() const { return coords_; }
  int dim() const { return static_cast<int>(coords_.size()); }
  double squared_norm() const { return coords_.squaredNorm(); }
  // Clamped to [0,1]: membership allows |x|^2 to exceed N by round-off only.
  double rho() const {
    const double r = squared_norm() / dim();
    return r < 0.0 ? 0.0 : (r > 1.0 ? 1.0 : r);
  }

 private:
  Eigen::VectorXd coords_;
};

/// Truncated mixed Hamiltonian: mixture coefficients plus one coefficient
/// tensor per active order, all of dimension N. Tensors are shared between
/// models (truncation does not copy coefficient data).
class Model {
 public:
  Model(MixtureSpec mixture, int N,
        std::map<int, std::shared_ptr<const DisorderTensor>> tensors,
        DisorderSpec disorder, std::uint64_t seed);

  const MixtureSpec& mixture() const { return mixture_; }
  int dim() const { return N_; }
  int p_max() const { return mixture_.p_max(); }
  const DisorderSpec& disorder() const { return disorder_; }
  std::uint64_t seed() const { return seed_; }
  const std::map<int, std::shared_ptr<const DisorderTensor>>& tensors() const {
    return tensors_;
  }

 private:
  MixtureSpec mixture_;
  int N_;
  std::map<int, std::shared_ptr<const DisorderTensor>> tensors_;
  DisorderSpec disorder_;
  std::uint64_t seed_;
};

/// Samples one tensor per active order of the mixture and assembles the model.
Model build_model(const MixtureSpec& mixture, const DisorderSpec& disorder,
                  int N, std::uint64_t seed,
                  std::size_t coeff_budget = default_coeff_budget);

/// Model restricted to orders <= p1, sharing tensor data with the parent.
Model truncate(const Model& model, int p1);

/// Hamiltonian value sum_p gamma_p N^{-(p-1)/2} <J^(p), x^{(x) p}> via
/// successive contraction of each order-p tensor (trailing index first).
double energy(const Model& model, const Point& x);

/// i-th directional derivative along the unit vector v (i in {1,2,3}):
/// i! times the sum over position subsets of size i of the mixed contraction
/// with v in those slots and x elsewhere.
double directional_derivative(const Model& model, const Point& x,
                              const Eigen::VectorXd& v, int i);

/// Full gradient by direct contraction (one free position per term).
Eigen::VectorXd gradient(const Model& model, const Point& x);

/// Euclidean Hessian: for each order, the ordered-pair sum of twice-contracted
/// slabs (the literal second derivative of the monomials, so repeated indices
/// carry their product-rule multiplicity). Output is exactly symmetric.
Eigen::MatrixXd euclidean_hessian(const Model& model, const Point& x);

/// Per-order Hessian pieces (already scaled by gamma_p N^{-(p-1)/2}).
/// Because each order is homogeneous, the gradient and the energy follow from
/// these at O(N^2): grad_p = H_p x / (p-1) and energy_p = x' H_p x / (p(p-1)).
struct HessianByOrder {
  Eigen::MatrixXd total;
  std::vector<std::pair<int, Eigen::MatrixXd>> per_order;

  Eigen::VectorXd gradient_at(const Eigen::VectorXd& x) const;
  double energy_at(const Eigen::VectorXd& x) const;
};
HessianByOrder euclidean_hessian_by_order(const Model& model, const Point& x);

/// P x' Hessian P with P = I - x x'/|x|^2; x itself becomes a zero mode.
Eigen::MatrixXd projected_hessian(const Model& model, const Point& x);
Eigen::MatrixXd project_out(const Eigen::MatrixXd& hessian,
                            const Eigen::VectorXd& x);

/// Empirical scaling statistics for the derivative and Lipschitz envelopes:
/// max |d^i_v H| / N^{1-i/2} over sampled (x,v), and
/// max ||H(x)-H(y)||_op sqrt(N)/||x-y|| over sampled pairs.
struct RegularityReport {
  std::array<double, 3> directional_stat{};  // i = 1,2,3
  double hessian_lipschitz_stat = 0.0;
  int n_points = 0;
  int n_dirs = 0;
};
RegularityReport regularity_report(const Model& model, int n_points, int n_dirs,
                                   std::uint64_t seed);

// Seeded point samplers. Directions come from normalized Gaussian vectors;
// ball sampling scales a sphere point by U^{1/N}.
Point sample_sphere_point(int N, std::uint64_t seed, std::uint64_t index);
Point sample_ball_point(int N, std::uint64_t seed, std::uint64_t index);
Point sample_point_at_rho(int N, double rho, std::uint64_t seed,
                          std::uint64_t index);
Eigen::VectorXd sample_unit_direction(int N, std::uint64_t seed,
                                      std::uint64_t index);

}  // namespace glasslab

#endif
