#include "glasslab/descent.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <stdexcept>

#include "glasslab/laws.hpp"
#include "glasslab/rng.hpp"
#include "glasslab/spectral.hpp"

namespace glasslab {

namespace {

// Index of the eigenvector carrying the trivial zero mode along x.
int zero_mode_index(const EigenDecomposition& eig, const Eigen::VectorXd& x) {
  const Eigen::VectorXd unit = x / x.norm();
  int best = 0;
  double best_overlap = -1.0;
  for (int i = 0; i < eig.eigenvectors.cols(); ++i) {
    const double overlap = std::fabs(eig.eigenvectors.col(i).dot(unit));
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::string DescentTrace::to_csv() const {
  std::string out = "step,rho,lambda_min,energy,energy_per_site,edge_mass\n";
  char buf[256];
  for (const DescentStep& s : steps) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.k,
                  s.rho, s.lambda_min, s.energy, s.energy_per_site, s.edge_mass);
    out += buf;
  }
  return out;
}

DescentTrace hessian_descent(const Model& model, const DescentConfig& cfg,
                             std::uint64_t seed) {
  const int K = cfg.steps;
  if (K < 2) throw std::invalid_argument("hessian_descent: steps must be >= 2");
  const int N = model.dim();
  if (N < K) {
    std::cerr << "hessian_descent: N=" << N << " < K=" << K
              << "; late steps are confined to a low-dimensional complement\n";
  }
  const double step_len = std::sqrt(static_cast<double>(N) / K);

  DescentTrace trace;
  trace.steps.reserve(K + 1);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
  double prev_energy = 0.0;
  double pending_overlap = 0.0;
  int pending_sign = 1;

  for (int k = 0; k <= K; ++k) {
    const Point pt(x);
    const HessianByOrder parts = euclidean_hessian_by_order(model, pt);
    const double energy_k = parts.energy_at(x);
    const double rho_k = static_cast<double>(k) / K;

    Eigen::MatrixXd matrix =
        (k == 0) ? parts.total : project_out(parts.total, x);
    const bool degenerate_origin =
        (k == 0) && matrix.cwiseAbs().maxCoeff() == 0.0;

    EigenDecomposition eig;
    int excluded = -1;
    double lambda_min = 0.0;
    if (!degenerate_origin) {
      eig = eigen_symmetric(matrix);
      if (k >= 1) excluded = zero_mode_index(eig, x);
      const int min_idx = (excluded == 0) ? 1 : 0;
      lambda_min = eig.eigenvalues(min_idx);
    }

    DescentStep row;
    row.k = k;
    row.rho = rho_k;
    row.squared_norm = x.squaredNorm();
    row.lambda_min = lambda_min;
    row.energy = energy_k;
    row.energy_per_site = energy_k / N;
    const double xi2 = xi_eval(model.mixture(), rho_k, 2);
    if (!degenerate_origin) {
      int count = 0;
      const double threshold = -2.0 * std::sqrt(xi2) + cfg.edge_eps;
      for (int i = 0; i < N; ++i) {
        if (eig.eigenvalues(i) <= threshold) ++count;
      }
      row.edge_mass = static_cast<double>(count) / N;
    } else {
      row.edge_mass = (cfg.edge_eps > 0.0) ? 1.0 : 0.0;  // all-zero spectrum
    }
    if (k >= 1) {
      row.predicted_increment =
          -(static_cast<double>(N) / K) * std::sqrt(xi2);
      row.actual_increment = energy_k - prev_energy;
      row.gradient_overlap = pending_overlap;
      row.sign = pending_sign;
    }
    if (cfg.record_spectrum_every > 0 && !degenerate_origin &&
        (k % cfg.record_spectrum_every == 0 || k == K)) {
      trace.spectra.emplace_back(
          k, std::vector<double>(eig.eigenvalues.data(),
                                 eig.eigenvalues.data() + N));
    }
    trace.steps.push_back(row);

    if (k == K) break;

    Eigen::VectorXd u;
    if (degenerate_origin) {
      u = sample_unit_direction(N, seed, 0);
      if (k == 0) trace.first_step_rule = "random_direction";
    } else {
      const int min_idx = (excluded == 0) ? 1 : 0;
      if (cfg.edge_window > 0.0) {
        // Random unit vector from the populated near-edge eigenspace.
        const double cutoff = eig.eigenvalues(min_idx) + cfg.edge_window;
        u = Eigen::VectorXd::Zero(N);
        for (int i = 0; i < N; ++i) {
          if (i == excluded || eig.eigenvalues(i) > cutoff) continue;
          const double w = rng::normal(rng::key(seed, rng::stream_direction,
                                                static_cast<std::uint64_t>(k),
                                                static_cast<std::uint64_t>(i)));
          u += w * eig.eigenvectors.col(i);
        }
        if (u.norm() == 0.0) u = eig.eigenvectors.col(min_idx);
      } else {
        u = eig.eigenvectors.col(min_idx);
      }
      if (k == 0) trace.first_step_rule = "euclidean_hessian_at_origin";
    }
    if (k >= 1) {
      // Enforce exact orthogonality so squared radii accumulate as k N/K.
      u -= (u.dot(x) / x.squaredNorm()) * x;
    }
    u /= u.norm();

    const double overlap = parts.gradient_at(x).dot(u);
    const int s = (overlap > 0.0) ? -1 : 1;
    pending_overlap = s * overlap;
    pending_sign = s;
    x += (s * step_len) * u;
    prev_energy = energy_k;
  }

  trace.terminal = x;
  trace.terminal_energy = trace.steps.back().energy;
  trace.terminal_energy_per_site = trace.steps.back().energy_per_site;
  return trace;
}

double predicted_energy(const Model& model) {
  return -static_cast<double>(model.dim()) * ground_state_target(model.mixture());
}

}  // namespace glasslab
