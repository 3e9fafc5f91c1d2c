#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glasslab/laws.hpp"
#include "glasslab/spectral.hpp"
#include "oracles.hpp"

using namespace glasslab;

TEST_CASE("eigen_symmetric on fixed matrices") {
  CHECK(eigen_symmetric(Eigen::MatrixXd::Identity(3, 3)).eigenvalues.isApprox(
      Eigen::Vector3d(1, 1, 1)));

  Eigen::MatrixXd d = Eigen::Vector3d(-2, 0, 5).asDiagonal();
  const EigenDecomposition dec = eigen_symmetric(d);
  CHECK(dec.eigenvalues(0) == doctest::Approx(-2.0));
  CHECK(dec.eigenvalues(1) == doctest::Approx(0.0));
  CHECK(dec.eigenvalues(2) == doctest::Approx(5.0));
  for (int i = 0; i < 3; ++i) {
    CHECK(dec.eigenvectors.col(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  }
}

TEST_CASE("eigen_symmetric matches the Sturm-bisection oracle at 8x8") {
  oracles::TestRng rng(12345);
  Eigen::MatrixXd a(8, 8);
  for (int i = 0; i < 8; ++i) {
    for (int j = i; j < 8; ++j) {
      a(i, j) = a(j, i) = rng.normal();
    }
  }
  const EigenDecomposition dec = eigen_symmetric(a);
  const std::vector<double> oracle = oracles::sturm_eigenvalues(a);
  for (int i = 0; i < 8; ++i) {
    CHECK(dec.eigenvalues(i) == doctest::Approx(oracle[i]).epsilon(1e-8));
  }
}

TEST_CASE("eigen_symmetric contract: reconstruction and orthonormality") {
  oracles::TestRng rng(777);
  const int n = 25;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      a(i, j) = a(j, i) = rng.normal();
    }
  }
  const EigenDecomposition dec = eigen_symmetric(a);
  const Eigen::MatrixXd rec = dec.eigenvectors *
                              dec.eigenvalues.asDiagonal() *
                              dec.eigenvectors.transpose();
  CHECK((a - rec).norm() <= 1e-9 * a.norm());
  CHECK((dec.eigenvectors.transpose() * dec.eigenvectors -
         Eigen::MatrixXd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff() <= 1e-9);
  // trace identity
  CHECK(dec.eigenvalues.sum() == doctest::Approx(a.trace()).epsilon(1e-9));
  // monotone output
  for (int i = 1; i < n; ++i) CHECK(dec.eigenvalues(i - 1) <= dec.eigenvalues(i));
}

TEST_CASE("eigen_symmetric input validation") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, -1.0, 1.0;
  CHECK_THROWS_AS(eigen_symmetric(bad), std::invalid_argument);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
  nan(0, 1) = nan(1, 0) = std::nan("");
  CHECK_THROWS_AS(eigen_symmetric(nan), std::invalid_argument);
}

TEST_CASE("esd basics") {
  const DisorderSpec g = DisorderSpec::make(DisorderKind::gaussian);

  SUBCASE("pure 3-spin at the origin: all eigenvalues vanish") {
    const Model m = build_model(MixtureSpec::pure(3), g, 12, 5);
    const EmpiricalDistribution d = esd(m, Point::origin(12), false);
    CHECK(d.min() == 0.0);
    CHECK(d.max() == 0.0);
  }

  SUBCASE("projected spectrum carries a zero mode") {
    const Model m = build_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), g, 30, 7);
    const Point x = sample_sphere_point(30, 9, 0);
    const EmpiricalDistribution d = esd(m, x, true);
    double closest = 1e300;
    for (double v : d.values()) closest = std::min(closest, std::fabs(v));
    const double scale = std::max(std::fabs(d.min()), std::fabs(d.max()));
    CHECK(closest <= 1e-9 * (1.0 + scale));
  }

  SUBCASE("pure 2-spin at N=400 is close to the semicircle of radius 2 sqrt 2") {
    const Model m = build_model(MixtureSpec::pure(2), g, 400, 11);
    const Point x = sample_sphere_point(400, 13, 0);
    const EmpiricalDistribution d = esd(m, x, true);
    CHECK(w1_distance(d, SemicircleLaw(2.0 * std::sqrt(2.0))) <= 0.1);
  }
}

TEST_CASE("normalized trace moments") {
  const DisorderSpec g = DisorderSpec::make(DisorderKind::gaussian);

  SUBCASE("k=2 pure 2-spin expectation is 1 + 1/N") {
    // E Tr((J+J')/sqrt(N))^2 = sum_{ij} E(J_ij + J_ji)^2 / N = (2N^2+2N)/N,
    // so the normalized moment has exact mean 1 + 1/N. 60 trials at N=60
    // give a standard error well below the 0.02 slack used here.
    const int N = 60;
    const Model m = build_model(MixtureSpec::pure(2), g, N, 17);
    const MomentReport rep = normalized_trace_moment(m, Point::north_pole(N), 2, 60, 19);
    CHECK(rep.normalized == doctest::Approx(1.0 + 1.0 / N).epsilon(0.02));
    CHECK(rep.catalan_target == 1.0);
  }

  SUBCASE("odd moments are small") {
    const int N = 150;
    const Model m = build_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), g, N, 23);
    const MomentReport rep = normalized_trace_moment(m, Point::north_pole(N), 3, 10, 29);
    CHECK(std::fabs(rep.normalized) <= 0.1);
    CHECK(rep.catalan_target == 0.0);
  }

  SUBCASE("even moments respect the 2^k envelope") {
    const int N = 200;
    const Model m = build_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), g, N, 31);
    for (int k : {2, 4, 6}) {
      const MomentReport rep = normalized_trace_moment(m, Point::north_pole(N), k, 3, 37);
      CHECK(rep.normalized >= 0.0);
      CHECK(rep.normalized <= 2.0 * std::pow(4.0, k / 2));
    }
  }

  SUBCASE("degenerate normalization is rejected") {
    const Model m = build_model(MixtureSpec::pure(3), g, 10, 41);
    CHECK_THROWS_AS(normalized_trace_moment(m, Point::origin(10), 2, 1, 1),
                    std::domain_error);
  }
}

TEST_CASE("trace moment sweep agrees with the single-shot op") {
  const DisorderSpec g = DisorderSpec::make(DisorderKind::gaussian);
  const MixtureSpec mix({{2, 1.0}, {3, 1.0}});
  const int N = 40;
  const std::vector<Point> pts = {Point::north_pole(N)};
  const auto sweep = trace_moment_sweep(mix, g, N, pts, {2, 3}, 5, 43);
  const Model m = build_model(mix, g, N, 0);
  const MomentReport direct = normalized_trace_moment(m, pts[0], 2, 5, 43);
  CHECK(sweep[0][0].euclidean.normalized ==
        doctest::Approx(direct.normalized).epsilon(1e-12));
  CHECK(sweep[0][0].per_trial_euclidean.size() == 5);
}
