#ifndef GLASSLAB_MIXTURE_HPP
#define GLASSLAB_MIXTURE_HPP

#include <map>
#include <string>

namespace glasslab {

/// Coefficient sequence (gamma_p)_{p>=2} of a finite mixture
/// xi(z) = sum_p gamma_p^2 z^p. Coefficients are nonnegative; at least one
/// must be positive. Orders with gamma_p = 0 are dropped at construction.
class MixtureSpec {
 public:
  explicit MixtureSpec(std::map<int, double> gammas);

  /// Pure p-spin convenience: a single unit coefficient at order p.
  static MixtureSpec pure(int p, double gamma = 1.0);

  const std::map<int, double>& gammas() const { return gammas_; }
  double gamma(int p) const;
  int p_max() const { return p_max_; }

  /// Mixture restricted to orders <= p1.
  MixtureSpec truncated(int p1) const;

  bool operator==(const MixtureSpec& other) const {
    return gammas_ == other.gammas_;
  }

 private:
  std::map<int, double> gammas_;
  int p_max_ = 0;
};

/// xi(z), xi'(z) or xi''(z) as an exact finite sum. order must be 0, 1, or 2;
/// |z| must not exceed 1.
double xi_eval(const MixtureSpec& m, double z, int order);

/// Quadrature value of integral_0^1 sqrt(xi''(t)) dt, the per-site energy the
/// descent path accumulates. quad_points (>= 16) is the Gauss-Legendre order
/// per panel; panels are graded toward t = 0 where the integrand can behave
/// like t^{(p-2)/2}.
double ground_state_target(const MixtureSpec& m, int quad_points = 64);

struct FullRsbResult {
  bool is_concave = false;
  double worst_violation = 0.0;  // most negative midpoint slack (>= 0 if none)
  std::string reason;            // filled when is_concave is false
};

/// Midpoint-concavity scan of g(q) = xi''(q)^{-1/2} on the uniform grid
/// q_i = i/grid_size, i = 1..grid_size. For each adjacent pair the slack
/// g(mid) - (g(a)+g(b))/2 is computed; the result is concave when the worst
/// slack stays above -1e-12 * max|g|.
FullRsbResult full_rsb_check(const MixtureSpec& m, int grid_size = 1024);

}  // namespace glasslab

#endif
