#include "glasslab/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "glasslab/laws.hpp"
#include "glasslab/rng.hpp"

namespace glasslab {

namespace {

void check_input(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("eigen_symmetric: matrix must be square");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument("eigen_symmetric: non-finite entries");
  }
  const double scale = a.cwiseAbs().maxCoeff();
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(scale, 1.0)) {
    throw std::invalid_argument("eigen_symmetric: matrix is not symmetric");
  }
}

double xi2_normalizer(const MixtureSpec& mixture, double rho, int k) {
  const double xi2 = xi_eval(mixture, rho, 2);
  if (!(xi2 > 0.0)) {
    throw std::domain_error(
        "trace moment: xi''(rho_x) vanishes, normalization undefined");
  }
  return std::pow(xi2, 0.5 * k);
}

}  // namespace

EigenDecomposition eigen_symmetric(const Eigen::MatrixXd& a) {
  check_input(a);
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigen_symmetric: decomposition failed");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Eigen::VectorXd eigenvalues_symmetric(const Eigen::MatrixXd& a) {
  check_input(a);
  const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigen_symmetric: decomposition failed");
  }
  return es.eigenvalues();
}

EmpiricalDistribution esd(const Model& model, const Point& x, bool projected) {
  const Eigen::MatrixXd h =
      projected ? projected_hessian(model, x) : euclidean_hessian(model, x);
  const Eigen::VectorXd ev = eigenvalues_symmetric(h);
  return EmpiricalDistribution(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

MomentReport normalized_trace_moment(const Model& model, const Point& x, int k,
                                     int trials, std::uint64_t seed,
                                     bool projected) {
  if (k < 1) throw std::invalid_argument("normalized_trace_moment: k must be >= 1");
  if (trials < 1) {
    throw std::invalid_argument("normalized_trace_moment: trials must be >= 1");
  }
  const double normalizer = xi2_normalizer(model.mixture(), x.rho(), k);
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Model fresh =
        build_model(model.mixture(), model.disorder(), model.dim(),
                    rng::derive_seed(seed, rng::stream_trial, t));
    const EmpiricalDistribution dist = esd(fresh, x, projected);
    sum += dist.moment(k);  // (1/N) Tr(H^k) as the mean of lambda^k
  }
  MomentReport rep;
  rep.k = k;
  rep.trials = trials;
  rep.raw_moment = sum / trials;
  rep.normalized = rep.raw_moment / normalizer;
  rep.catalan_target = catalan_target(k);
  return rep;
}

std::vector<std::vector<MomentPair>> trace_moment_sweep(
    const MixtureSpec& mixture, const DisorderSpec& disorder, int N,
    const std::vector<Point>& points, const std::vector<int>& ks, int trials,
    std::uint64_t seed) {
  if (points.empty() || ks.empty()) {
    throw std::invalid_argument("trace_moment_sweep: points and ks must be nonempty");
  }
  if (trials < 1) {
    throw std::invalid_argument("trace_moment_sweep: trials must be >= 1");
  }
  const std::size_t np = points.size();
  const std::size_t nk = ks.size();
  std::vector<std::vector<MomentPair>> out(np, std::vector<MomentPair>(nk));
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nk; ++i) {
      MomentPair& pair = out[j][i];
      pair.euclidean.k = pair.projected.k = ks[i];
      pair.euclidean.trials = pair.projected.trials = trials;
      pair.euclidean.catalan_target = pair.projected.catalan_target =
          catalan_target(ks[i]);
      pair.per_trial_euclidean.reserve(trials);
    }
  }

  for (int t = 0; t < trials; ++t) {
    const Model fresh = build_model(mixture, disorder, N,
                                    rng::derive_seed(seed, rng::stream_trial, t));
    for (std::size_t j = 0; j < np; ++j) {
      const EmpiricalDistribution de = esd(fresh, points[j], false);
      const EmpiricalDistribution dp = esd(fresh, points[j], true);
      for (std::size_t i = 0; i < nk; ++i) {
        const double norm = xi2_normalizer(mixture, points[j].rho(), ks[i]);
        MomentPair& pair = out[j][i];
        pair.euclidean.raw_moment += de.moment(ks[i]);
        pair.projected.raw_moment += dp.moment(ks[i]);
        pair.per_trial_euclidean.push_back(de.moment(ks[i]) / norm);
      }
    }
  }

  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < nk; ++i) {
      MomentPair& pair = out[j][i];
      const double norm = xi2_normalizer(mixture, points[j].rho(), ks[i]);
      pair.euclidean.raw_moment /= trials;
      pair.projected.raw_moment /= trials;
      pair.euclidean.normalized = pair.euclidean.raw_moment / norm;
      pair.projected.normalized = pair.projected.raw_moment / norm;
    }
  }
  return out;
}

}  // namespace glasslab
