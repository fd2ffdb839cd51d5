#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dunkl/core.hpp"

namespace dunkl {

/// Default relative tolerance of every adaptive kernel integral.
inline constexpr double kDefaultTol = 1e-10;

enum class Domain { Interval, Sphere, Ball };

/// Nodes and positive weights. Multi-dimensional nodes are stored flattened, `dim`
/// coordinates per node. `order` is the polynomial degree integrated exactly.
struct QuadratureRule {
  Domain domain = Domain::Interval;
  int dim = 1;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
  Vector point(std::size_t i) const { return Vector(node(i)); }
  double weight_sum() const;
};

/// Three-term recurrence p_{n+1} = (t - alpha_n) p_n - beta_n p_{n-1};
/// beta[0] holds the total mass of the weight.
struct Recurrence {
  std::vector<double> alpha;
  std::vector<double> beta;
};

/// Weight (1-t)^a (1+t)^b on [-1, 1].
Recurrence jacobi_recurrence(double a, double b, int n);

/// Weight |t|^{2 mu} (1-t^2)^lambda on [-1, 1].
Recurrence generalized_gegenbauer_recurrence(double mu, double lambda, int n);

/// Gauss rule from recurrence coefficients (Golub-Welsch; implicit QL on the Jacobi
/// matrix tracking only the first eigenvector components, O(n^2)).
QuadratureRule gauss_from_recurrence(const Recurrence& rec);

/// n-point Gauss rule for (1-t)^a (1+t)^b.
QuadratureRule gauss_jacobi(int n, double a, double b);

/// n-point Gauss rule for the rank-one intertwiner weight (1-t)^{k-1}(1+t)^k.
QuadratureRule jacobi_rule(double k, int n);

/// Product rule on S^{d-1} against omega_k d sigma, exact for polynomials of total
/// degree <= `degree`. The x_1 factor uses a generalized Gegenbauer rule with an even
/// node count, so no node lies on the wall x_1 = 0.
QuadratureRule sphere_rule(const Params& p, int degree);

/// Product rule on S^{d-1} against plain surface measure.
QuadratureRule plain_sphere_rule(int d, int degree);

/// Product rule on the unit ball against omega_k dy.
QuadratureRule ball_rule(const Params& p, int degree);

/// Abscissa together with accurately computed distances to both endpoints.
struct IntervalPoint {
  double t;
  double one_minus_t;
  double one_plus_t;
};

struct JacobiOptions {
  double tol = 1e-10;
  double abs_tol = 0.0;
  int max_panels = 6000;
  /// When in (0, 1), pre-grade panels geometrically toward t = 1 down to this width.
  double right_scale = 0.0;
  /// Same toward t = -1.
  double left_scale = 0.0;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  int evaluations = 0;
};

using JacobiIntegrand = std::function<double(const IntervalPoint&)>;

/// Adaptive estimate of int_{-1}^{1} f(t) (1-t)^{k-1} (1+t)^k dt. End panels use
/// Gauss-Jacobi rules that absorb the endpoint factor; interior panels use
/// Gauss-Legendre with the weight multiplied in. Panels are bisected by largest
/// 10-vs-20-point discrepancy until the summed discrepancy is below
/// max(tol |I|, abs_tol).
IntegrationResult integrate_jacobi(const JacobiIntegrand& f, double k, const JacobiOptions& opts);

double integrate_jacobi(const std::function<double(double)>& f, double k, double tol = 1e-10);

/// Sum of w_i f(node_i) over a sphere or ball rule.
double apply_rule(const QuadratureRule& rule, const std::function<double(const Vector&)>& f);

/// int_B f(y) omega_k(y) dy with the ball product rule; f should be smooth on B.
double ball_integrate(const std::function<double(const Vector&)>& f, const Params& p, int degree);

/// int_B (|y|^{2-2k-d} - 1) g(y) omega_k(y) dy. In polar form the radial factor is
/// (r - r^{d-1+2k}) dr, so the origin singularity cancels exactly and each term gets
/// its own Gauss-Jacobi radial rule. Exact for polynomial g up to `degree`.
double ball_integrate_newtonian(const std::function<double(const Vector&)>& g, const Params& p,
                                int degree);

/// As above restricted to the ball of radius r: int_{|y|<r} (|y|^{2-2k-d} - r^{2-2k-d}) g omega_k dy.
double ball_integrate_newtonian(const std::function<double(const Vector&)>& g, const Params& p,
                                int degree, double radius);

}  // namespace dunkl
