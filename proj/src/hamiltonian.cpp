#include "glasslab/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "glasslab/rng.hpp"

namespace glasslab {

namespace {

using Flat = std::vector<double>;
using RowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;

std::size_t ipow(std::size_t n, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= n;
  return r;
}

// out[i] = dot(T[i*N .. (i+1)*N), w); removes the trailing index (stride-1).
void contract_last(const double* T, std::size_t n_out, int N, const double* w,
                   double* out) {
  for (std::size_t i = 0; i < n_out; ++i) {
    const double* row = T + i * static_cast<std::size_t>(N);
    double acc = 0.0;
    for (int j = 0; j < N; ++j) acc += row[j] * w[j];
    out[i] = acc;
  }
}

// out[r] = sum_j w[j] * T[j*n_out + r]; removes the leading index.
void contract_first(const double* T, std::size_t n_out, int N, const double* w,
                    double* out) {
  std::fill(out, out + n_out, 0.0);
  for (int j = 0; j < N; ++j) {
    const double wj = w[j];
    const double* block = T + static_cast<std::size_t>(j) * n_out;
    for (std::size_t r = 0; r < n_out; ++r) out[r] += wj * block[r];
  }
}

// Removes the second index of an order-q tensor (q >= 3):
// out[i0, rest] = sum_j w[j] T[i0, j, rest].
void contract_second(const double* T, int q, int N, const double* w,
                     double* out) {
  const std::size_t inner = ipow(static_cast<std::size_t>(N), q - 2);
  for (int i0 = 0; i0 < N; ++i0) {
    double* dst = out + static_cast<std::size_t>(i0) * inner;
    std::fill(dst, dst + inner, 0.0);
    for (int j = 0; j < N; ++j) {
      const double wj = w[j];
      const double* src =
          T + (static_cast<std::size_t>(i0) * N + j) * inner;
      for (std::size_t r = 0; r < inner; ++r) dst[r] += wj * src[r];
    }
  }
}

// Contract every position: assign[pos] supplies the vector for that slot.
double contract_scalar(const double* T, int p, int N,
                       const std::vector<const double*>& assign) {
  std::size_t size = ipow(static_cast<std::size_t>(N), p - 1);
  Flat cur(size);
  contract_last(T, size, N, assign[p - 1], cur.data());
  for (int pos = p - 2; pos >= 1; --pos) {
    size /= N;
    Flat next(size);
    contract_last(cur.data(), size, N, assign[pos], next.data());
    cur.swap(next);
  }
  double acc = 0.0;
  for (int j = 0; j < N; ++j) acc += cur[j] * assign[0][j];
  return acc;
}

// Gradient of the raw multilinear form: component l keeps position l free and
// contracts every other slot with x. The prefix chain (leading slots folded in
// one at a time) keeps the total work at O(p N^p).
Eigen::VectorXd tensor_gradient(const double* T, int p, int N, const double* x) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(N);
  Flat prefix_store;
  const double* P = T;
  std::size_t P_size = ipow(static_cast<std::size_t>(N), p);
  for (int l = 0; l < p; ++l) {
    const int ord = p - l;
    if (ord == 1) {
      for (int k = 0; k < N; ++k) g[k] += P[k];
    } else {
      std::size_t sz = P_size / N;
      Flat cur(sz);
      contract_last(P, sz, N, x, cur.data());
      for (int rem = ord - 2; rem >= 1; --rem) {
        sz /= N;
        Flat next(sz);
        contract_last(cur.data(), sz, N, x, next.data());
        cur.swap(next);
      }
      for (int k = 0; k < N; ++k) g[k] += cur[k];
    }
    if (l < p - 1) {
      const std::size_t nsz = P_size / N;
      Flat np(nsz);
      contract_first(P, nsz, N, x, np.data());
      prefix_store.swap(np);
      P = prefix_store.data();
      P_size = nsz;
    }
  }
  return g;
}

// Ordered-pair sum of twice-contracted slabs: for every l < m the tensor is
// contracted with x everywhere except positions (l, m), and the slab enters
// together with its transpose. This is the literal second derivative of the
// monomials, so repeated indices pick up exactly the product-rule terms.
Eigen::MatrixXd tensor_slab_sum(const double* T, int p, int N, const double* x) {
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
  Flat prefix_store;
  const double* P = T;
  std::size_t P_size = ipow(static_cast<std::size_t>(N), p);

  for (int l = 0; l <= p - 2; ++l) {
    const int q = p - l;  // order of the prefix-contracted tensor
    Flat suffix_store;
    const double* S = P;
    std::size_t S_size = P_size;
    for (int j = 0; j <= q - 2; ++j) {
      const int ord = q - j;  // free original positions l .. p-1-j
      if (ord == 2) {
        RowMajorMap slab(S, N, N);
        H += slab;
        H += slab.transpose();
      } else {
        // Fold the middle slots, keeping the first and last free.
        Flat mid;
        const double* src = S;
        std::size_t sz = S_size;
        for (int t = 0; t < ord - 2; ++t) {
          const std::size_t nsz = sz / N;
          Flat next(nsz);
          contract_second(src, ord - t, N, x, next.data());
          mid.swap(next);
          src = mid.data();
          sz = nsz;
        }
        RowMajorMap slab(src, N, N);
        H += slab;
        H += slab.transpose();
      }
      if (j < q - 2) {
        const std::size_t nsz = S_size / N;
        Flat next(nsz);
        contract_last(S, nsz, N, x, next.data());
        suffix_store.swap(next);
        S = suffix_store.data();
        S_size = nsz;
      }
    }
    if (l < p - 2) {
      const std::size_t nsz = P_size / N;
      Flat np(nsz);
      contract_first(P, nsz, N, x, np.data());
      prefix_store.swap(np);
      P = prefix_store.data();
      P_size = nsz;
    }
  }
  return H;
}

double order_scale(int p, int N) {
  return std::pow(static_cast<double>(N), -0.5 * (p - 1));
}

}  // namespace

Point::Point(Eigen::VectorXd coords) : coords_(std::move(coords)) {
  if (coords_.size() == 0) throw std::invalid_argument("Point: empty vector");
  const double n = static_cast<double>(coords_.size());
  if (!(coords_.squaredNorm() <= n * (1.0 + 1e-9))) {
    throw std::invalid_argument("Point: squared norm exceeds the ball radius N");
  }
}

Point Point::origin(int N) { return Point(Eigen::VectorXd::Zero(N)); }

Point Point::north_pole(int N) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
  x[N - 1] = std::sqrt(static_cast<double>(N));
  return Point(std::move(x));
}

Model::Model(MixtureSpec mixture, int N,
             std::map<int, std::shared_ptr<const DisorderTensor>> tensors,
             DisorderSpec disorder, std::uint64_t seed)
    : mixture_(std::move(mixture)), N_(N), tensors_(std::move(tensors)),
      disorder_(std::move(disorder)), seed_(seed) {
  if (N_ < 1) throw std::invalid_argument("Model: N must be >= 1");
  for (const auto& [p, g] : mixture_.gammas()) {
    auto it = tensors_.find(p);
    if (it == tensors_.end() || !it->second) {
      throw std::invalid_argument("Model: missing tensor for an active order");
    }
    if (it->second->order() != p || it->second->dim() != N_) {
      throw std::invalid_argument("Model: tensor order/dimension mismatch");
    }
    (void)g;
  }
}

Model build_model(const MixtureSpec& mixture, const DisorderSpec& disorder,
                  int N, std::uint64_t seed, std::size_t coeff_budget) {
  std::map<int, std::shared_ptr<const DisorderTensor>> tensors;
  for (const auto& [p, g] : mixture.gammas()) {
    (void)g;
    tensors[p] = sample_tensor(disorder, p, N, seed, coeff_budget);
  }
  return Model(mixture, N, std::move(tensors), disorder, seed);
}

Model truncate(const Model& model, int p1) {
  if (p1 < 2 || p1 > model.p_max()) {
    throw std::invalid_argument("truncate: p1 out of range");
  }
  MixtureSpec mix = model.mixture().truncated(p1);
  std::map<int, std::shared_ptr<const DisorderTensor>> tensors;
  for (const auto& [p, t] : model.tensors()) {
    if (p <= p1) tensors[p] = t;  // shared, no copy
  }
  return Model(std::move(mix), model.dim(), std::move(tensors),
               model.disorder(), model.seed());
}

double energy(const Model& model, const Point& x) {
  const int N = model.dim();
  if (x.dim() != N) throw std::invalid_argument("energy: dimension mismatch");
  const double* xd = x.coords().data();
  double total = 0.0;
  for (const auto& [p, t] : model.tensors()) {
    std::vector<const double*> assign(p, xd);
    total += model.mixture().gamma(p) * order_scale(p, N) *
             contract_scalar(t->data(), p, N, assign);
  }
  return total;
}

double directional_derivative(const Model& model, const Point& x,
                              const Eigen::VectorXd& v, int i) {
  const int N = model.dim();
  if (i < 1 || i > 3) {
    throw std::invalid_argument("directional_derivative: i must be 1, 2 or 3");
  }
  if (v.size() != N || x.dim() != N) {
    throw std::invalid_argument("directional_derivative: dimension mismatch");
  }
  if (std::fabs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("directional_derivative: v must be a unit vector");
  }
  const double* xd = x.coords().data();
  const double* vd = v.data();
  double fact = 1.0;
  for (int k = 2; k <= i; ++k) fact *= k;

  double total = 0.0;
  for (const auto& [p, t] : model.tensors()) {
    if (i > p) continue;  // derivative order beyond the monomial degree
    // Enumerate the distinct placements of i derivative slots among p.
    std::vector<int> mask(p, 0);
    std::fill(mask.begin(), mask.begin() + i, 1);
    std::sort(mask.begin(), mask.end());
    double subtotal = 0.0;
    do {
      std::vector<const double*> assign(p);
      for (int pos = 0; pos < p; ++pos) assign[pos] = mask[pos] ? vd : xd;
      subtotal += contract_scalar(t->data(), p, N, assign);
    } while (std::next_permutation(mask.begin(), mask.end()));
    total += model.mixture().gamma(p) * order_scale(p, N) * fact * subtotal;
  }
  return total;
}

Eigen::VectorXd gradient(const Model& model, const Point& x) {
  const int N = model.dim();
  if (x.dim() != N) throw std::invalid_argument("gradient: dimension mismatch");
  const double* xd = x.coords().data();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(N);
  for (const auto& [p, t] : model.tensors()) {
    g += model.mixture().gamma(p) * order_scale(p, N) *
         tensor_gradient(t->data(), p, N, xd);
  }
  return g;
}

HessianByOrder euclidean_hessian_by_order(const Model& model, const Point& x) {
  const int N = model.dim();
  if (x.dim() != N) throw std::invalid_argument("hessian: dimension mismatch");
  const double* xd = x.coords().data();
  HessianByOrder out;
  out.total = Eigen::MatrixXd::Zero(N, N);
  for (const auto& [p, t] : model.tensors()) {
    Eigen::MatrixXd Hp = model.mixture().gamma(p) * order_scale(p, N) *
                         tensor_slab_sum(t->data(), p, N, xd);
    Hp = (0.5 * (Hp + Hp.transpose())).eval();
    out.total += Hp;
    out.per_order.emplace_back(p, std::move(Hp));
  }
  return out;
}

Eigen::VectorXd HessianByOrder::gradient_at(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (const auto& [p, Hp] : per_order) g += (Hp * x) / (p - 1);
  return g;
}

double HessianByOrder::energy_at(const Eigen::VectorXd& x) const {
  double e = 0.0;
  for (const auto& [p, Hp] : per_order) {
    e += x.dot(Hp * x) / (static_cast<double>(p) * (p - 1));
  }
  return e;
}

Eigen::MatrixXd euclidean_hessian(const Model& model, const Point& x) {
  return euclidean_hessian_by_order(model, x).total;
}

Eigen::MatrixXd project_out(const Eigen::MatrixXd& hessian,
                            const Eigen::VectorXd& x) {
  const double norm = x.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("project_out: projector undefined at the origin");
  }
  const Eigen::VectorXd y = x / norm;
  const Eigen::VectorXd hy = hessian * y;
  const double alpha = y.dot(hy);
  Eigen::MatrixXd r = hessian;
  r.noalias() -= y * hy.transpose();
  r.noalias() -= hy * y.transpose();
  r.noalias() += alpha * (y * y.transpose());
  return (0.5 * (r + r.transpose())).eval();
}

Eigen::MatrixXd projected_hessian(const Model& model, const Point& x) {
  if (!(x.coords().norm() > 0.0)) {
    throw std::invalid_argument("projected_hessian: undefined at the origin");
  }
  return project_out(euclidean_hessian(model, x), x.coords());
}

RegularityReport regularity_report(const Model& model, int n_points, int n_dirs,
                                   std::uint64_t seed) {
  if (n_points < 1 || n_dirs < 1) {
    throw std::invalid_argument("regularity_report: need at least one point and direction");
  }
  const int N = model.dim();
  RegularityReport rep;
  rep.n_points = n_points;
  rep.n_dirs = n_dirs;

  std::vector<Point> points;
  points.reserve(n_points);
  for (int j = 0; j < n_points; ++j) {
    points.push_back(sample_ball_point(N, seed, static_cast<std::uint64_t>(j)));
  }
  std::vector<Eigen::VectorXd> dirs;
  dirs.reserve(n_dirs);
  for (int d = 0; d < n_dirs; ++d) {
    dirs.push_back(sample_unit_direction(N, seed, static_cast<std::uint64_t>(d)));
  }

  for (int i = 1; i <= 3; ++i) {
    const double scale = std::pow(static_cast<double>(N), 1.0 - 0.5 * i);
    double worst = 0.0;
    for (const Point& x : points) {
      for (const Eigen::VectorXd& v : dirs) {
        worst = std::max(worst,
                         std::fabs(directional_derivative(model, x, v, i)) / scale);
      }
    }
    rep.directional_stat[i - 1] = worst;
  }

  std::vector<Eigen::MatrixXd> hessians;
  hessians.reserve(n_points);
  for (const Point& x : points) hessians.push_back(euclidean_hessian(model, x));
  double worst = 0.0;
  for (int a = 0; a < n_points; ++a) {
    for (int b = a + 1; b < n_points; ++b) {
      const double dist = (points[a].coords() - points[b].coords()).norm();
      if (dist < 1e-12) continue;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          hessians[a] - hessians[b], Eigen::EigenvaluesOnly);
      const double op = std::max(std::fabs(es.eigenvalues()(0)),
                                 std::fabs(es.eigenvalues()(N - 1)));
      worst = std::max(worst, op * std::sqrt(static_cast<double>(N)) / dist);
    }
  }
  rep.hessian_lipschitz_stat = worst;
  return rep;
}

Eigen::VectorXd sample_unit_direction(int N, std::uint64_t seed,
                                      std::uint64_t index) {
  Eigen::VectorXd g(N);
  for (int i = 0; i < N; ++i) {
    g[i] = rng::normal(rng::key(seed, rng::stream_direction, index,
                                static_cast<std::uint64_t>(i)));
  }
  const double norm = g.norm();
  if (!(norm > 0.0)) throw std::runtime_error("sample_unit_direction: zero draw");
  return g / norm;
}

Point sample_sphere_point(int N, std::uint64_t seed, std::uint64_t index) {
  Eigen::VectorXd g(N);
  for (int i = 0; i < N; ++i) {
    g[i] = rng::normal(rng::key(seed, rng::stream_point, index,
                                static_cast<std::uint64_t>(i)));
  }
  const double norm = g.norm();
  if (!(norm > 0.0)) throw std::runtime_error("sample_sphere_point: zero draw");
  return Point(std::sqrt(static_cast<double>(N)) * g / norm);
}

Point sample_ball_point(int N, std::uint64_t seed, std::uint64_t index) {
  const Point s = sample_sphere_point(N, seed, index);
  const double u = rng::uniform01(rng::key(seed, rng::stream_radius, index, 0));
  const double r = std::pow(u, 1.0 / static_cast<double>(N));
  return Point(r * s.coords());
}

Point sample_point_at_rho(int N, double rho, std::uint64_t seed,
                          std::uint64_t index) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw std::invalid_argument("sample_point_at_rho: rho must lie in [0,1]");
  }
  const Point s = sample_sphere_point(N, seed, index);
  return Point(std::sqrt(rho) * s.coords());
}

}  // namespace glasslab
