#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dunkl/core.hpp"
#include "dunkl/estimates.hpp"
#include "dunkl/operator.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// A function on the unit sphere, given by its values there.
struct BoundaryFunction {
  std::function<double(const Vector&)> eval;
  std::string label;

  double operator()(const Vector& z) const { return eval(z); }
};

/// Exponent p > 1 and regularization eps >= 0 of the Taylor remainders F and F_eps.
struct Remainder {
  double p = 2.0;
  double eps = 0.0;

  void validate() const;
};

/// F(a, b) = |b|^p - |a|^p - p a |a|^{p-2} (b - a), the second-order Taylor remainder of
/// |.|^p at a. Close arguments use the integral form (b-a)^2 int_0^1 g''(a + s(b-a))(1-s) ds.
double remainder_F(const Remainder& r, double a, double b);

/// The same remainder for g(s) = (s^2 + eps^2)^{p/2}; equals remainder_F when eps = 0.
double remainder_F_eps(const Remainder& r, double a, double b);

/// Extremes of F(a, b) / ((b - a)^2 max(|a|, |b|)^{p-2}) over a sweep of b/a spanning
/// 1e-8 to 1e8 in both signs, plus the endpoints a = 0 and b = 0.
Band remainder_band(double p_exp);

/// Largest F_eps / F over a sweep of (a, b, eps); below 1 / (p - 1) when 1 < p < 2.
double remainder_eps_ratio_max(double p_exp);

/// Smallest even degree for which a sphere rule resolves a kernel peaked at radius `rho`
/// (|x| for the Poisson kernel) to relative accuracy `tol`.
int sphere_degree_for(double rho, double tol);

/// P_k[f](x) = (1/d_k) int_S P_k(x, z) f(z) omega_k(z) dsigma(z) by the weighted sphere rule.
/// degree = 0 starts from a degree fixed by |x| and tol and raises it until two successive
/// estimates agree to tol.
double poisson_integral(const BoundaryFunction& f, const Params& p, const Vector& x, int degree = 0,
                        double tol = kDefaultTol);

/// One numerical check: what was compared, where, and how far apart the two sides are.
struct CheckResult {
  std::string check;
  int d = 0;
  double k = 0.0;
  double p_exp = 0.0;  // exponent for remainder-based checks, 0 when unused
  Vector point;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

std::string check_csv_header();
std::string to_csv_row(const CheckResult& c);

/// Polynomial extrapolation to h = 0 of values taken at h_j = 2^{-j} (Neville's scheme on
/// the last `order` + 1 entries). Returns the extrapolated value and the change from the
/// previous-order estimate.
struct Extrapolation {
  double value = 0.0;
  double change = 0.0;
};
Extrapolation extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& values, int order);

/// Compares P_k[N_k(., y)](x) with N_k(x, y) - G_k(x, y) for |y| < 1 and with N_k(x, y) for
/// |y| > 1. For |y| = 1 the boundary data is singular at y, so the Poisson integrals of the
/// dilations N_k(r ., y), r = 1 - 2^{-j}, are extrapolated to r = 1. The residual is the
/// difference scaled by max(1, |N_k(x, y)|); tolerance 1e-6 inside and outside, 1e-5 on S.
CheckResult poisson_newton_check(const Params& p, const Vector& x, const Vector& y, double tol = 1e-12);

/// int_B G_k(x, y) g(y) omega_k(y) dy for g smooth on the closed ball. x = 0 reduces to a
/// radial integral; otherwise the singularities at x and sigma x are cut out with smooth
/// bumps of radius r0 = 0.9 min(|x_1|, 1 - |x|), integrated in local polar coordinates, and the
/// smooth remainder goes to a ball rule of degree about 28 / r0. Needs |x_1| >= 0.05 when x != 0.
struct GreenIntegralOptions {
  int radial_nodes = 16;
  int angular_degree = 16;
  int ball_degree = 0;  // 0 chooses from the bump radius
  double kernel_tol = 1e-10;
};
double green_weighted_integral(const Params& p, const Vector& x, const std::function<double(const Vector&)>& g,
                               const GreenIntegralOptions& opts = {});

/// |u(x) - P_k[u|_S](x) + int_B G_k(x, y) Delta_k u(y) omega_k(y) dy|, with Delta_k u given in
/// closed form. An empty `laplacian` marks u as Delta_k-harmonic, and the Green term is 0.
CheckResult poisson_jensen_check(const ScalarField& u, const std::function<double(const Vector&)>& laplacian,
                                 const Params& p, const Vector& x, double tolerance = 1e-5);

/// Both sides of the Delta_k |u|^p formula at x, for steps h and h/2. With eps = 0 the
/// left side is Delta_k |u|^p; with eps > 0 it is Delta_k (u^2 + eps^2)^{p/2}. The right
/// side uses central-difference gradients and Delta_k u. Passes when the fine residual is
/// at roundoff level or halving h divides it by a factor in [3.5, 4.5].
struct PthPowerReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual_coarse = 0.0;
  double residual_fine = 0.0;
  double normalized_residual = 0.0;
  double ratio = 0.0;
  bool passed = false;
};
PthPowerReport pth_power_formula_check(const ScalarField& u, const Remainder& r, const Params& p, const Vector& x,
                                       double h = 1e-2);

/// (1/d_k int_S |u(r y)|^p omega_k(y) dsigma(y))^{1/p}.
double hp_norm(const ScalarField& u, double p_exp, const Params& p, double r, int degree = 64);

/// C_k int_{|y|<R} (|y|^{2-2k-d} - R^{2-2k-d}) [p(p-1)|u|^{p-2}|grad u|^2 + k F(u(y), u(sigma y)) / y_1^2]
/// omega_k(y) dy + |u(0)|^p: the right side of the Hardy-Stein identity on the ball of radius R.
double hardy_stein_rhs(const ScalarField& u, double p_exp, const Params& p, double radius = 1.0, int degree = 48);

struct HardyStein {
  double lhs = 0.0;                // lim_{r->1} ||u_r||^p by dilation ladder and extrapolation
  double rhs = 0.0;                // |u(0)|^p + Green-weighted integral of Delta_k |u|^p
  double residual = 0.0;           // |lhs - rhs| / lhs
  double boundary_lhs = 0.0;       // (1/d_k) int_S |f|^p omega_k dsigma
  double boundary_residual = 0.0;  // |boundary_lhs - rhs| / boundary_lhs
  double extension_error = 0.0;    // max |P_k[f] - u| over the check points
  int ladder_steps = 0;
  bool passed = false;
};

/// Hardy-Stein identity for u = P_k[f]. `u` is the harmonic extension of f in closed form;
/// it is checked against poisson_integral(f) at a few interior points. Throws
/// SlowConvergence if the dilation ladder does not settle by r = 1 - 2^{-10}.
HardyStein hardy_stein_check(const BoundaryFunction& f, const ScalarField& u, double p_exp, const Params& p,
                             double tolerance = 1e-3);

/// d_k times the inward radial derivative of G_k(x, .) at y in S, from the one-sided
/// second-order difference (4 G(x, (1-h)y) - G(x, (1-2h)y)) / (2h), against P_k(x, y).
CheckResult green_poisson_gradient_check(const Params& p, const Vector& x, const Vector& y, double h = 1e-5,
                                         double tolerance = 1e-4);

}  // namespace dunkl
