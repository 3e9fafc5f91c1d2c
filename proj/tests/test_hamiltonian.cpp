#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "glasslab/hamiltonian.hpp"
#include "glasslab/rng.hpp"
#include "glasslab/spectral.hpp"
#include "oracles.hpp"

using namespace glasslab;

namespace {

Model gaussian_model(const MixtureSpec& mix, int N, std::uint64_t seed) {
  return build_model(mix, DisorderSpec::make(DisorderKind::gaussian), N, seed);
}

Eigen::MatrixXd raw_matrix(const Model& m, int p) {
  const auto& t = *m.tensors().at(p);
  Eigen::MatrixXd j(m.dim(), m.dim());
  for (int a = 0; a < m.dim(); ++a) {
    for (int b = 0; b < m.dim(); ++b) {
      j(a, b) = t.coeffs()[static_cast<std::size_t>(a) * m.dim() + b];
    }
  }
  return j;
}

}  // namespace

TEST_CASE("point invariants") {
  CHECK_THROWS_AS(Point(Eigen::VectorXd::Constant(4, 2.0)), std::invalid_argument);
  const Point np = Point::north_pole(9);
  CHECK(np.rho() == doctest::Approx(1.0));
  CHECK(Point::origin(5).rho() == 0.0);
}

TEST_CASE("energy: zero at the origin") {
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 0.5}}), 8, 1);
  CHECK(energy(m, Point::origin(8)) == 0.0);
}

TEST_CASE("energy: pure 2-spin equals the quadratic form") {
  const int N = 20;
  const Model m = gaussian_model(MixtureSpec::pure(2), N, 3);
  const Eigen::MatrixXd j = raw_matrix(m, 2);
  const Point x = sample_ball_point(N, 77, 0);
  // direct double-loop oracle
  double oracle = 0.0;
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      oracle += x.coords()[a] * j(a, b) * x.coords()[b];
    }
  }
  oracle /= std::sqrt(static_cast<double>(N));
  CHECK(energy(m, x) == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("energy: all-ones pure 3-spin at (1,1,1)") {
  const MixtureSpec mix = MixtureSpec::pure(3);
  const DisorderSpec spec = DisorderSpec::make(DisorderKind::gaussian);
  auto ones = std::make_shared<DisorderTensor>(spec, 3, 3, 0,
                                               std::vector<double>(27, 1.0));
  const Model m(mix, 3, {{3, ones}}, spec, 0);
  CHECK(energy(m, Point(Eigen::VectorXd::Ones(3))) == doctest::Approx(9.0));
}

TEST_CASE("homogeneity: pure p-spin scales as t^p") {
  for (int p : {2, 3, 4}) {
    const int N = 10;
    const Model m = gaussian_model(MixtureSpec::pure(p), N, 5);
    const Point x = sample_sphere_point(N, 8, 0);
    const double e1 = energy(m, x);
    for (double t : {0.25, 0.5, 0.75}) {
      const Point tx(t * x.coords());
      CHECK(energy(m, tx) ==
            doctest::Approx(std::pow(t, p) * e1).epsilon(1e-12));
    }
  }
}

TEST_CASE("gradient matches finite differences") {
  const int N = 15;
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), N, 11);
  const Point x = Point(0.7 * sample_sphere_point(N, 21, 0).coords());
  auto f = [&m](const Eigen::VectorXd& v) { return energy(m, Point(v)); };
  const Eigen::VectorXd fd = oracles::fd_gradient(f, x.coords(), 1e-5);
  const Eigen::VectorXd g = gradient(m, x);
  CHECK((g - fd).norm() / fd.norm() <= 1e-6);

  // i=1 directional derivative recovers gradient components.
  for (int j : {0, 7, N - 1}) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(N);
    e[j] = 1.0;
    CHECK(directional_derivative(m, x, e, 1) ==
          doctest::Approx(g[j]).epsilon(1e-10));
  }
}

TEST_CASE("second directional derivative of a pure 2-spin is x-free") {
  const int N = 12;
  const Model m = gaussian_model(MixtureSpec::pure(2), N, 13);
  const Eigen::MatrixXd j = raw_matrix(m, 2);
  const Eigen::VectorXd v = sample_unit_direction(N, 99, 0);
  const double closed =
      v.dot((j + j.transpose()) * v) / std::sqrt(static_cast<double>(N));
  for (int idx = 0; idx < 3; ++idx) {
    const Point x = sample_ball_point(N, 31, idx);
    CHECK(directional_derivative(m, x, v, 2) ==
          doctest::Approx(closed).epsilon(1e-12));
    CHECK(directional_derivative(m, x, v, 3) == 0.0);
  }
}

TEST_CASE("directional derivative rejects unnormalized directions") {
  const Model m = gaussian_model(MixtureSpec::pure(2), 6, 1);
  CHECK_THROWS_AS(directional_derivative(m, Point::origin(6),
                                         Eigen::VectorXd::Constant(6, 0.7), 1),
                  std::invalid_argument);
}

TEST_CASE("euclidean hessian: pure 2-spin closed form") {
  const int N = 14;
  const Model m = gaussian_model(MixtureSpec::pure(2), N, 17);
  const Eigen::MatrixXd expected =
      (raw_matrix(m, 2) + raw_matrix(m, 2).transpose()) /
      std::sqrt(static_cast<double>(N));
  for (int idx = 0; idx < 2; ++idx) {
    const Point x = sample_ball_point(N, 41, idx);
    const Eigen::MatrixXd h = euclidean_hessian(m, x);
    CHECK((h - expected).cwiseAbs().maxCoeff() <= 1e-14 * expected.cwiseAbs().maxCoeff() + 1e-14);
  }
}

TEST_CASE("euclidean hessian matches finite differences at p_max=3") {
  const int N = 12;
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), N, 19);
  const Point x = Point(0.8 * sample_sphere_point(N, 23, 0).coords());
  auto f = [&m](const Eigen::VectorXd& v) { return energy(m, Point(v)); };
  const Eigen::MatrixXd fd = oracles::fd_hessian(f, x.coords(), 1e-4);
  const Eigen::MatrixXd h = euclidean_hessian(m, x);
  CHECK((h - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff() <= 1e-5);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);  // exact symmetry
}

TEST_CASE("hessian at the origin vanishes for pure 3-spin") {
  const Model m = gaussian_model(MixtureSpec::pure(3), 9, 29);
  CHECK(euclidean_hessian(m, Point::origin(9)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quadratic form consistency between routes") {
  const int N = 11;
  const Model m = gaussian_model(MixtureSpec({{2, 0.5}, {3, 1.5}}), N, 37);
  const Point x = sample_ball_point(N, 43, 0);
  const Eigen::MatrixXd h = euclidean_hessian(m, x);
  for (int d = 0; d < 3; ++d) {
    const Eigen::VectorXd v = sample_unit_direction(N, 47, d);
    CHECK(directional_derivative(m, x, v, 2) ==
          doctest::Approx(v.dot(h * v)).epsilon(1e-10));
  }
}

TEST_CASE("per-order pieces reproduce gradient and energy") {
  const int N = 10;
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 1.0}, {4, 0.3}}), N, 53);
  const Point x = Point(0.9 * sample_sphere_point(N, 59, 0).coords());
  const HessianByOrder parts = euclidean_hessian_by_order(m, x);
  CHECK((parts.total - euclidean_hessian(m, x)).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd g = gradient(m, x);
  CHECK((parts.gradient_at(x.coords()) - g).norm() <= 1e-10 * g.norm());
  CHECK(parts.energy_at(x.coords()) ==
        doctest::Approx(energy(m, x)).epsilon(1e-10));
}

TEST_CASE("projected hessian") {
  const int N = 10;
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), N, 61);

  SUBCASE("north pole zeroes the last row and column") {
    const Point np = Point::north_pole(N);
    const Eigen::MatrixXd he = euclidean_hessian(m, np);
    const Eigen::MatrixXd hp = projected_hessian(m, np);
    for (int i = 0; i < N; ++i) {
      CHECK(hp(N - 1, i) == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(hp(i, N - 1) == doctest::Approx(0.0).epsilon(1e-14));
    }
    CHECK((hp.topLeftCorner(N - 1, N - 1) - he.topLeftCorner(N - 1, N - 1))
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
  }

  SUBCASE("x is annihilated") {
    const Point x = sample_sphere_point(N, 67, 0);
    const Eigen::MatrixXd hp = projected_hessian(m, x);
    const double scale = hp.cwiseAbs().maxCoeff();
    CHECK((hp * x.coords()).norm() <= 1e-10 * (1.0 + scale) * x.coords().norm());
  }

  SUBCASE("projector is idempotent") {
    const Point x = sample_sphere_point(N, 71, 1);
    const Eigen::MatrixXd once = projected_hessian(m, x);
    const Eigen::MatrixXd twice = project_out(once, x.coords());
    CHECK((once - twice).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + once.cwiseAbs().maxCoeff()));
  }

  SUBCASE("undefined at the origin") {
    CHECK_THROWS_AS(projected_hessian(m, Point::origin(N)), std::invalid_argument);
  }
}

TEST_CASE("projected spectrum interlaces the euclidean one") {
  const int N = 10;
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), N, 73);
  const Point x = sample_sphere_point(N, 79, 0);
  const Eigen::VectorXd le = eigenvalues_symmetric(euclidean_hessian(m, x));
  Eigen::VectorXd lp_all = eigenvalues_symmetric(projected_hessian(m, x));
  // Remove the zero mode (eigenvalue closest to 0 with eigenvector along x).
  int zero_idx = 0;
  for (int i = 1; i < N; ++i) {
    if (std::fabs(lp_all[i]) < std::fabs(lp_all[zero_idx])) zero_idx = i;
  }
  std::vector<double> lp;
  for (int i = 0; i < N; ++i) {
    if (i != zero_idx) lp.push_back(lp_all[i]);
  }
  for (int i = 0; i < N - 1; ++i) {
    CHECK(le[i] <= lp[i] + 1e-9);
    CHECK(lp[i] <= le[i + 1] + 1e-9);
  }
}

TEST_CASE("truncation") {
  const int N = 12;
  const Model m = gaussian_model(MixtureSpec({{2, 1.0}, {3, 1.0}}), N, 83);

  SUBCASE("truncating to p_max is a spectral no-op") {
    const Point x = sample_ball_point(N, 89, 0);
    const Model full = truncate(m, 3);
    const Eigen::VectorXd a = eigenvalues_symmetric(euclidean_hessian(m, x));
    const Eigen::VectorXd b = eigenvalues_symmetric(euclidean_hessian(full, x));
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("eigenvalue shift obeys the dropped-term operator norm") {
    const Point x = sample_sphere_point(N, 97, 0);
    const Model only3 = Model(MixtureSpec::pure(3), N,
                              {{3, m.tensors().at(3)}}, m.disorder(), m.seed());
    const Eigen::VectorXd shift_bound_eigs =
        eigenvalues_symmetric(euclidean_hessian(only3, x));
    const double bound = std::max(std::fabs(shift_bound_eigs[0]),
                                  std::fabs(shift_bound_eigs[N - 1]));
    const Eigen::VectorXd full = eigenvalues_symmetric(euclidean_hessian(m, x));
    const Eigen::VectorXd trunc =
        eigenvalues_symmetric(euclidean_hessian(truncate(m, 2), x));
    for (int i = 0; i < N; ++i) {
      CHECK(std::fabs(full[i] - trunc[i]) <= bound + 1e-12);
    }
  }

  SUBCASE("idempotent composition and tensor sharing") {
    const Model a = truncate(truncate(m, 3), 2);
    const Model b = truncate(m, 2);
    CHECK(a.mixture() == b.mixture());
    CHECK(a.tensors().at(2).get() == m.tensors().at(2).get());  // shared data
    CHECK_THROWS_AS(truncate(m, 1), std::invalid_argument);
    CHECK_THROWS_AS(truncate(m, 4), std::invalid_argument);
  }
}

TEST_CASE("regularity statistics") {
  SUBCASE("pure 2-spin: cubic and Lipschitz statistics vanish") {
    const Model m = gaussian_model(MixtureSpec::pure(2), 20, 101);
    const RegularityReport rep = regularity_report(m, 3, 2, 7);
    CHECK(rep.directional_stat[2] == 0.0);
    CHECK(rep.hessian_lipschitz_stat <= 1e-12);
    CHECK(rep.directional_stat[0] > 0.0);
  }

  SUBCASE("statistics stay within a factor 2 when N doubles") {
    const MixtureSpec mix({{2, 1.0}, {3, 1.0}});
    const Model m50 = gaussian_model(mix, 50, 103);
    const Model m100 = gaussian_model(mix, 100, 107);
    const RegularityReport r50 = regularity_report(m50, 3, 3, 5);
    const RegularityReport r100 = regularity_report(m100, 3, 3, 5);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::isfinite(r50.directional_stat[i]));
      const double lo = r50.directional_stat[i] / 2.0;
      const double hi = r50.directional_stat[i] * 2.0;
      CHECK(r100.directional_stat[i] >= lo);
      CHECK(r100.directional_stat[i] <= hi);
    }
    CHECK(r100.hessian_lipschitz_stat >= r50.hessian_lipschitz_stat / 2.0);
    CHECK(r100.hessian_lipschitz_stat <= r50.hessian_lipschitz_stat * 2.0);
  }
}
