#ifndef GLASSLAB_DESCENT_HPP
#define GLASSLAB_DESCENT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "glasslab/hamiltonian.hpp"

namespace glasslab {

/// Parameters of a descent run. The path takes K orthogonal steps of squared
/// norm N/K, so after step k the squared radius is exactly k N/K.
struct DescentConfig {
  int steps = 100;                // K >= 2
  double edge_eps = 0.5;          // edge-mass threshold parameter recorded per step
  int record_spectrum_every = 0;  // 0 = never store full spectra
  double edge_window = 0.0;       // >0: random unit vector from the near-edge
                                  // eigenspace {lambda <= lambda_min + window}
};

struct DescentStep {
  int k = 0;
  double rho = 0.0;              // k/K
  double squared_norm = 0.0;     // |x_k|^2, equals k N/K up to round-off
  double lambda_min = 0.0;       // minimal relevant eigenvalue at x_k
  double energy = 0.0;           // H(x_k)
  double energy_per_site = 0.0;  // H(x_k)/N
  double edge_mass = 0.0;        // mass at or below -2 sqrt(xi''(rho)) + eps
  double predicted_increment = 0.0;  // -(N/K) sqrt(xi''(k/K)), k >= 1
  double actual_increment = 0.0;     // H(x_k) - H(x_{k-1}), k >= 1
  double gradient_overlap = 0.0;     // <grad H(x_{k-1}), s u> chosen <= 0
  int sign = 1;
};

struct DescentTrace {
  std::vector<DescentStep> steps;  // k = 0..K
  Eigen::VectorXd terminal;        // x_K on the sphere
  double terminal_energy = 0.0;
  double terminal_energy_per_site = 0.0;
  std::string first_step_rule;  // "euclidean_hessian_at_origin" or
                                // "random_direction"
  std::vector<std::pair<int, std::vector<double>>> spectra;  // optional snapshots

  /// CSV with columns step,rho,lambda_min,energy,energy_per_site,edge_mass.
  std::string to_csv() const;
};

/// Hessian descent from the origin to the sphere: at each location take the
/// minimal-eigenvalue unit eigenvector of the projected Hessian restricted to
/// the orthogonal complement of x (the zero mode along x is excluded), orient
/// it against the gradient, and advance by sqrt(N/K). At the origin the
/// projector is undefined, so the first direction comes from the Euclidean
/// Hessian there; if that matrix vanishes identically (no order-2 term), a
/// seeded random unit direction is used instead.
DescentTrace hessian_descent(const Model& model, const DescentConfig& cfg,
                             std::uint64_t seed);

/// Energy the descent is predicted to reach: -N * integral_0^1 sqrt(xi'').
/// (Sign convention: the algorithm minimizes, so the target is negative.)
double predicted_energy(const Model& model);

}  // namespace glasslab

#endif
