#ifndef GLASSLAB_SPECTRAL_HPP
#define GLASSLAB_SPECTRAL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "glasslab/empirical_distribution.hpp"
#include "glasslab/hamiltonian.hpp"

namespace glasslab {

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
};

/// Full decomposition of a symmetric matrix. The input is symmetrized
/// internally after a 1e-10-relative symmetry check; non-finite entries are
/// rejected. Reconstruction error stays below 1e-9 * ||A||_F.
EigenDecomposition eigen_symmetric(const Eigen::MatrixXd& a);

/// Eigenvalues only (same contract, no vectors).
Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& a);

/// Empirical spectral distribution of the requested Hessian at x.
EmpiricalDistribution esd(const Model& model, const Point& x, bool projected);

struct MomentReport {
  int k = 0;
  double raw_moment = 0.0;      // mean over trials of (1/N) Tr(Hessian^k)
  double normalized = 0.0;      // divided by xi''(rho_x)^{k/2}
  double catalan_target = 0.0;  // limit value for comparison
  int trials = 0;
};

/// Monte Carlo estimate of the normalized trace moment: fresh disorder per
/// trial, (1/N) Tr(H^k) from the eigenvalues, then division by
/// xi''(rho_x)^{k/2} of the model's own (already truncated) mixture.
/// `projected` selects the sphere Hessian instead of the Euclidean one.
MomentReport normalized_trace_moment(const Model& model, const Point& x, int k,
                                     int trials, std::uint64_t seed,
                                     bool projected = false);

/// One pass over `trials` fresh disorder draws, evaluating every (x, k)
/// combination on each draw. Result is indexed [point][k-index] and each
/// entry carries the Euclidean and projected versions.
struct MomentPair {
  MomentReport euclidean;
  MomentReport projected;
  std::vector<double> per_trial_euclidean;  // per-trial normalized values
};
std::vector<std::vector<MomentPair>> trace_moment_sweep(
    const MixtureSpec& mixture, const DisorderSpec& disorder, int N,
    const std::vector<Point>& points, const std::vector<int>& ks, int trials,
    std::uint64_t seed);

}  // namespace glasslab

#endif
