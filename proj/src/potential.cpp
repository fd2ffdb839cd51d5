#include "dunkl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>

#include "dunkl/kernels.hpp"

namespace dunkl {

namespace {

constexpr double kSphereSlack = 1e-12;
constexpr int kMaxSphereDegree = 1000;
constexpr double kSphereNodeBudget = 4e6;
constexpr int kMaxBoundarySteps = 10;

/// Approximate node count of the product sphere rule of the given degree.
double sphere_rule_size(int d, int degree) {
  return (degree + 2.0) * std::pow(0.5 * degree + 1.0, d - 2);
}

std::shared_ptr<const QuadratureRule> cached_sphere_rule(const Params& p, int degree) {
  thread_local std::map<std::tuple<int, double, int>, std::shared_ptr<const QuadratureRule>> cache;
  const auto key = std::make_tuple(p.d, p.k, degree);
  auto it = cache.find(key);
  if (it == cache.end()) {
    if (sphere_rule_size(p.d, degree) > kSphereNodeBudget) {
      throw SlowConvergence("sphere rule of degree " + std::to_string(degree) + " in dimension " +
                            std::to_string(p.d) + " exceeds the node budget");
    }
    if (cache.size() > 32) cache.clear();
    it = cache.emplace(key, std::make_shared<const QuadratureRule>(sphere_rule(p, degree))).first;
  }
  return it->second;
}

const QuadratureRule& cached_legendre(int n) {
  thread_local std::map<int, QuadratureRule> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_jacobi(n, 0.0, 0.0)).first;
  return it->second;
}

/// Weighted sphere average (1/d_k) int_S f omega_k dsigma.
double sphere_mean(const std::function<double(const Vector&)>& f, const Params& p, int degree) {
  const auto rule = cached_sphere_rule(p, degree);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule->size(); ++i) acc += rule->weights[i] * f(rule->point(i));
  return acc / p.d_k;
}

/// (b - a)^2 int_0^1 g''(a + s(b - a)) (1 - s) ds by 10-point Gauss-Legendre.
template <class SecondDerivative>
double taylor_remainder_integral(double a, double b, SecondDerivative g2) {
  const QuadratureRule& gl = cached_legendre(10);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.size(); ++i) {
    const double s = 0.5 * (gl.nodes[i] + 1.0);
    acc += 0.5 * gl.weights[i] * g2(a + s * (b - a)) * (1.0 - s);
  }
  return (b - a) * (b - a) * acc;
}

/// Smooth cutoff equal to 1 at t = 0 and 0 for t >= 1, with the transition spread over the
/// whole interval so the complementary factor stays cheap for the ball rule.
double bump(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  auto f = [](double s) { return std::exp(-1.0 / s); };
  const double up = f(1.0 - t);
  return up / (up + f(t));
}

double scaled_difference(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

bool on_sphere(const Vector& y) { return std::abs(norm(y) - 1.0) <= kSphereSlack; }

std::string join_coords(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ';';
    os << v[i];
  }
  return os.str();
}

}  // namespace

void Remainder::validate() const {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidParams("remainder exponent p must exceed 1");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidParams("regularization eps must be nonnegative");
}

double remainder_F(const Remainder& r, double a, double b) {
  r.validate();
  const double p = r.p;
  if (a == b) return 0.0;
  if (a == 0.0) return std::pow(std::abs(b), p);
  if (b == 0.0) return (p - 1.0) * std::pow(std::abs(a), p);
  if (std::abs(b - a) <= 0.25 * std::abs(a)) {
    return taylor_remainder_integral(a, b, [p](double s) { return p * (p - 1.0) * std::pow(std::abs(s), p - 2.0); });
  }
  const double aa = std::abs(a);
  const double value = std::pow(std::abs(b), p) - std::pow(aa, p) - p * a * std::pow(aa, p - 2.0) * (b - a);
  return std::max(value, 0.0);
}

double remainder_F_eps(const Remainder& r, double a, double b) {
  r.validate();
  const double e = r.eps;
  if (e == 0.0) return remainder_F(r, a, b);
  const double p = r.p;
  if (a == b) return 0.0;
  const double e2 = e * e;
  if (std::abs(b - a) <= 0.25 * std::hypot(a, e)) {
    return taylor_remainder_integral(a, b, [p, e2](double s) {
      const double m = s * s + e2;
      return p * std::pow(m, 0.5 * p - 2.0) * ((p - 1.0) * s * s + e2);
    });
  }
  const double ma = a * a + e2;
  const double value =
      std::pow(b * b + e2, 0.5 * p) - std::pow(ma, 0.5 * p) - p * a * std::pow(ma, 0.5 * p - 1.0) * (b - a);
  return std::max(value, 0.0);
}

Band remainder_band(double p_exp) {
  const Remainder r{p_exp, 0.0};
  r.validate();
  Band band{std::numeric_limits<double>::infinity(), 0.0};
  auto record = [&](double a, double b) {
    const double scale = (b - a) * (b - a) * std::pow(std::max(std::abs(a), std::abs(b)), p_exp - 2.0);
    const double v = remainder_F(r, a, b) / scale;
    band.lower = std::min(band.lower, v);
    band.upper = std::max(band.upper, v);
  };
  record(0.0, 1.0);
  record(1.0, 0.0);
  for (int i = 0; i <= 320; ++i) {
    const double m = std::pow(10.0, -8.0 + 0.05 * i);
    if (m != 1.0) record(1.0, m);
    record(1.0, -m);
  }
  for (int i = 0; i <= 40; ++i) {
    const double gap = std::pow(10.0, -10.0 + 0.25 * i);
    record(1.0, 1.0 + gap);
    record(1.0, 1.0 - gap);
  }
  return band;
}

double remainder_eps_ratio_max(double p_exp) {
  double worst = 0.0;
  for (int ie = 0; ie <= 24; ++ie) {
    const double eps = std::pow(10.0, -6.0 + 0.5 * ie);
    const Remainder r{p_exp, eps};
    for (int i = 0; i <= 160; ++i) {
      const double m = std::pow(10.0, -8.0 + 0.1 * i);
      for (double b : {m, -m}) {
        for (double a : {0.0, 1.0}) {
          if (a == b) continue;
          const double f = remainder_F({p_exp, 0.0}, a, b);
          if (f > 0.0) worst = std::max(worst, remainder_F_eps(r, a, b) / f);
        }
      }
    }
  }
  return worst;
}

int sphere_degree_for(double rho, double tol) {
  if (!(tol > 0.0)) throw InvalidParams("tolerance must be positive");
  if (rho < 1e-3) return 8;
  if (rho >= 1.0) return kMaxSphereDegree;
  int degree = static_cast<int>(std::ceil(std::log(0.1 * tol) / std::log(rho))) + 4;
  degree += degree % 2;
  return std::clamp(degree, 8, kMaxSphereDegree);
}

double poisson_integral(const BoundaryFunction& f, const Params& p, const Vector& x, int degree, double tol) {
  if (x.size() != static_cast<std::size_t>(p.d)) throw InvalidParams("point dimension does not match d");
  const double rx = norm(x);
  if (!(rx < 1.0)) throw OutsideBall("Poisson integral needs |x| < 1");
  const double kernel_tol = std::max(1e-14, 0.1 * tol);
  auto at = [&](int deg) {
    return sphere_mean([&](const Vector& z) { return poisson(p, x, z, kernel_tol) * f(z); }, p, deg);
  };
  if (degree > 0) return at(degree);

  // The kernel fixes a starting degree; f may need more, so raise it until two estimates agree.
  degree = sphere_degree_for(rx, tol);
  double value = at(degree);
  double change = std::numeric_limits<double>::infinity();
  while (degree < kMaxSphereDegree) {
    const int next = std::min(kMaxSphereDegree, degree + std::max(8, (degree / 4) * 2));
    if (sphere_rule_size(p.d, next) > kSphereNodeBudget) throw ToleranceNotReached(value, change);
    const double refined = at(next);
    change = std::abs(refined - value);
    const bool settled = change <= tol * std::max(1.0, std::abs(refined));
    value = refined;
    degree = next;
    if (settled) break;
  }
  return value;
}

std::string check_csv_header() { return "check,d,k,p,point,lhs,rhs,residual,tolerance,passed"; }

std::string to_csv_row(const CheckResult& c) {
  std::ostringstream os;
  os.precision(17);
  os << c.check << ',' << c.d << ',' << c.k << ',' << c.p_exp << ',' << join_coords(c.point) << ',' << c.lhs << ','
     << c.rhs << ',' << c.residual << ',' << c.tolerance << ',' << (c.passed ? "true" : "false");
  return os.str();
}

Extrapolation extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& values, int order) {
  if (h.size() != values.size() || h.empty()) throw InvalidParams("extrapolation needs matching nonempty data");
  const int n = static_cast<int>(h.size());
  order = std::clamp(order, 0, n - 1);
  const int first = n - 1 - order;
  std::vector<double> t(values.begin() + first, values.end());
  std::vector<double> hs(h.begin() + first, h.end());
  Extrapolation out;
  out.value = t.back();
  double previous = t.back();
  for (int level = 1; level <= order; ++level) {
    for (int i = order; i >= level; --i) {
      t[i] = t[i] + (t[i] - t[i - 1]) * hs[i] / (hs[i - level] - hs[i]);
    }
    previous = out.value;
    out.value = t[order];
  }
  out.change = std::abs(out.value - previous);
  return out;
}

CheckResult poisson_newton_check(const Params& p, const Vector& x, const Vector& y, double tol) {
  if (x.size() != static_cast<std::size_t>(p.d) || y.size() != x.size()) {
    throw InvalidParams("point dimension does not match d");
  }
  const double rx = norm(x);
  if (!(rx < 1.0)) throw OutsideBall("Poisson integral needs |x| < 1");
  const double ry = norm(y);
  CheckResult c;
  c.d = p.d;
  c.k = p.k;
  c.point = x;
  const double newton_xy = newton(p, x, y, tol).value();
  auto newton_on_sphere = [&](double r) {
    return BoundaryFunction{[&p, &y, r, tol](const Vector& z) { return newton(p, r * z, y, tol).value(); }, "N"};
  };

  if (on_sphere(y)) {
    c.check = "poisson-newton-boundary";
    c.tolerance = 1e-5;
    std::vector<double> hs;
    std::vector<double> vals;
    Extrapolation ex;
    for (int j = 1; j <= kMaxBoundarySteps; ++j) {
      const double h = std::ldexp(1.0, -j);
      const double r = 1.0 - h;
      const int degree = sphere_degree_for(std::max(rx, r), tol);
      hs.push_back(h);
      vals.push_back(poisson_integral(newton_on_sphere(r), p, x, degree, tol));
      ex = extrapolate_to_zero(hs, vals, std::min(j - 1, 5));
      if (j >= 4 && ex.change <= 1e-9 * std::max(1.0, std::abs(ex.value))) break;
      if (degree >= kMaxSphereDegree && j >= 4) break;
    }
    c.lhs = ex.value;
    c.rhs = newton_xy;
  } else if (ry < 1.0) {
    c.check = "poisson-newton-interior";
    c.tolerance = 1e-6;
    const int degree = sphere_degree_for(std::max(rx, ry), tol);
    c.lhs = poisson_integral(newton_on_sphere(1.0), p, x, degree, tol);
    c.rhs = newton_xy - green_direct(p, x, y, tol).value();
  } else {
    c.check = "poisson-newton-exterior";
    c.tolerance = 1e-6;
    const int degree = sphere_degree_for(std::max(rx, 1.0 / ry), tol);
    c.lhs = poisson_integral(newton_on_sphere(1.0), p, x, degree, tol);
    c.rhs = newton_xy;
  }
  c.residual = scaled_difference(c.lhs, c.rhs);
  c.passed = c.residual < c.tolerance;
  return c;
}

double green_weighted_integral(const Params& p, const Vector& x, const std::function<double(const Vector&)>& g,
                               const GreenIntegralOptions& opts) {
  if (x.size() != static_cast<std::size_t>(p.d)) throw InvalidParams("point dimension does not match d");
  const double rx = norm(x);
  if (!(rx < 1.0)) throw OutsideBall("Green integral needs |x| < 1");
  if (rx == 0.0) {
    const int degree = opts.ball_degree > 0 ? opts.ball_degree : 48;
    return p.C_k * ball_integrate_newtonian(g, p, degree);
  }
  if (std::abs(x[0]) < 0.05) {
    throw InvalidParams("Green-weighted integral needs |x_1| >= 0.05 or x = 0");
  }
  const double r0 = 0.9 * std::min(std::abs(x[0]), 1.0 - rx);
  auto integrand = [&](const Vector& y) {
    return green_direct(p, x, y, opts.kernel_tol).value() * g(y) * weight(p, y);
  };

  // Neighbourhoods of x and sigma x in local polar coordinates; the inner half of each
  // radius uses rho = (r0/2) s^3 so the log / power singularity becomes smooth in s.
  const QuadratureRule& gl = cached_legendre(opts.radial_nodes);
  const QuadratureRule dirs = plain_sphere_rule(p.d, opts.angular_degree);
  double local = 0.0;
  for (const Vector& centre : {x, reflect(x)}) {
    auto shell = [&](double rho) {
      double acc = 0.0;
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        const Vector y = centre + rho * dirs.point(j);
        acc += dirs.weights[j] * integrand(y);
      }
      return acc * std::pow(rho, p.d - 1);
    };
    const double half = 0.5 * r0;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double s = 0.5 * (gl.nodes[i] + 1.0);
      const double w = 0.5 * gl.weights[i];
      const double rho_in = half * s * s * s;
      local += w * 3.0 * half * s * s * bump(rho_in / r0) * shell(rho_in);
      const double rho_out = half + half * s;
      local += w * half * bump(rho_out / r0) * shell(rho_out);
    }
  }

  const int degree =
      opts.ball_degree > 0 ? opts.ball_degree : std::clamp(static_cast<int>(std::ceil(28.0 / r0)), 60, 400);
  const QuadratureRule ball = ball_rule(p, degree);
  const Vector sx = reflect(x);
  double rest = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const Vector y = ball.point(i);
    const double cut = 1.0 - bump(distance(y, x) / r0) - bump(distance(y, sx) / r0);
    if (cut <= 0.0) continue;
    rest += ball.weights[i] * cut * green_direct(p, x, y, opts.kernel_tol).value() * g(y);
  }
  return local + rest;
}

CheckResult poisson_jensen_check(const ScalarField& u, const std::function<double(const Vector&)>& laplacian,
                                 const Params& p, const Vector& x, double tolerance) {
  CheckResult c;
  c.check = "poisson-jensen:" + u.label;
  c.d = p.d;
  c.k = p.k;
  c.point = x;
  c.tolerance = tolerance;
  c.lhs = u(x);
  const double boundary = poisson_integral(BoundaryFunction{u.eval, u.label}, p, x, 0, 1e-12);
  const double green = laplacian ? green_weighted_integral(p, x, laplacian) : 0.0;
  c.rhs = boundary - green;
  c.residual = std::abs(c.lhs - c.rhs);
  c.passed = c.residual < tolerance;
  return c;
}

PthPowerReport pth_power_formula_check(const ScalarField& u, const Remainder& r, const Params& p, const Vector& x,
                                       double h) {
  r.validate();
  const double pe = r.p;
  const double e2 = r.eps * r.eps;
  if (r.eps == 0.0 && pe < 2.0 && u(x) == 0.0) {
    throw InvalidParams("the |u|^p formula needs p >= 2 or u(x) != 0");
  }
  ScalarField v;
  v.eval = [u, pe, e2](const Vector& y) {
    const double a = u(y);
    return e2 == 0.0 ? std::pow(std::abs(a), pe) : std::pow(a * a + e2, 0.5 * pe);
  };
  v.label = "power(" + u.label + ")";
  v.region = u.region;
  v.parity = u.parity;

  struct Sides {
    double lhs;
    double rhs;
    double scale;
  };
  auto sides = [&](double step) {
    const LaplacianTerms left = dunkl_laplacian_terms(v, p, x, step);
    const Vector grad = gradient(u, x, step);
    const double lap_u = dunkl_laplacian(u, p, x, step);
    const double a = u(x);
    const double b = u(reflect(x));
    const double g2 = norm2(grad);
    double t1 = 0.0;
    double t3 = 0.0;
    if (e2 == 0.0) {
      const double aa = std::abs(a);
      t1 = pe * (pe - 1.0) * std::pow(aa, pe - 2.0) * g2;
      t3 = pe * a * std::pow(aa, pe - 2.0) * lap_u;
    } else {
      const double m = a * a + e2;
      t1 = pe * std::pow(m, 0.5 * pe - 2.0) * ((pe - 1.0) * a * a + e2) * g2;
      t3 = pe * a * std::pow(m, 0.5 * pe - 1.0) * lap_u;
    }
    const double t2 = p.k * remainder_F_eps(r, a, b) / (x[0] * x[0]);
    const double scale = std::abs(left.laplacian) + std::abs(left.gradient) + std::abs(left.reflection) +
                         std::abs(t1) + std::abs(t2) + std::abs(t3) + std::abs(v(x)) / (step * step);
    return Sides{left.value(), t1 + t2 + t3, scale};
  };

  const Sides coarse = sides(h);
  const Sides fine = sides(0.5 * h);
  PthPowerReport rep;
  rep.lhs = fine.lhs;
  rep.rhs = fine.rhs;
  rep.residual_coarse = std::abs(coarse.lhs - coarse.rhs);
  rep.residual_fine = std::abs(fine.lhs - fine.rhs);
  rep.normalized_residual = rep.residual_fine / std::max(fine.scale, std::numeric_limits<double>::min());
  rep.ratio = rep.residual_fine > 0.0 ? rep.residual_coarse / rep.residual_fine
                                      : std::numeric_limits<double>::infinity();
  rep.passed = rep.normalized_residual <= 1e-9 || (rep.ratio >= 3.5 && rep.ratio <= 4.5);
  return rep;
}

double hp_norm(const ScalarField& u, double p_exp, const Params& p, double r, int degree) {
  if (!(p_exp > 0.0)) throw InvalidParams("exponent must be positive");
  if (!(r >= 0.0 && r < 1.0)) throw InvalidParams("slice radius must lie in [0, 1)");
  if (r == 0.0) return std::abs(u(Vector(static_cast<std::size_t>(p.d))));
  const double mean =
      sphere_mean([&](const Vector& z) { return std::pow(std::abs(u(r * z)), p_exp); }, p, degree);
  return std::pow(mean, 1.0 / p_exp);
}

double hardy_stein_rhs(const ScalarField& u, double p_exp, const Params& p, double radius, int degree) {
  if (!(p_exp > 1.0)) throw InvalidParams("Hardy-Stein exponent must exceed 1");
  const Remainder rem{p_exp, 0.0};
  constexpr double kStep = 1e-5;
  auto integrand = [&](const Vector& y) {
    const double a = u(y);
    const double b = u(reflect(y));
    const double g2 = norm2(gradient(u, y, kStep));
    double first = 0.0;
    if (g2 > 0.0) {
      first = a == 0.0 && p_exp < 2.0 ? std::numeric_limits<double>::infinity()
                                      : p_exp * (p_exp - 1.0) * std::pow(std::abs(a), p_exp - 2.0) * g2;
    }
    return first + p.k * remainder_F(rem, a, b) / (y[0] * y[0]);
  };
  const double origin = std::pow(std::abs(u(Vector(static_cast<std::size_t>(p.d)))), p_exp);
  return origin + p.C_k * ball_integrate_newtonian(integrand, p, degree, radius);
}

HardyStein hardy_stein_check(const BoundaryFunction& f, const ScalarField& u, double p_exp, const Params& p,
                             double tolerance) {
  if (!(p_exp > 1.0)) throw InvalidParams("Hardy-Stein exponent must exceed 1");
  constexpr int kDegree = 64;
  HardyStein hs;

  for (const Vector& x : {Vector(static_cast<std::size_t>(p.d)), 0.5 * unit_vector(p.d, 0),
                          0.3 * unit_vector(p.d, 0) + (p.d > 1 ? -0.4 * unit_vector(p.d, 1) : Vector(p.d))}) {
    hs.extension_error = std::max(hs.extension_error, std::abs(poisson_integral(f, p, x, 0, 1e-12) - u(x)));
  }

  std::vector<double> hvals;
  std::vector<double> slices;
  Extrapolation ex;
  bool settled = false;
  for (int j = 1; j <= kMaxBoundarySteps; ++j) {
    const double h = std::ldexp(1.0, -j);
    const double r = 1.0 - h;
    hvals.push_back(h);
    slices.push_back(sphere_mean([&](const Vector& z) { return std::pow(std::abs(u(r * z)), p_exp); }, p, kDegree));
    ex = extrapolate_to_zero(hvals, slices, std::min(j - 1, 5));
    hs.ladder_steps = j;
    if (j >= 4 && ex.change <= 1e-11 * std::max(1.0, std::abs(ex.value))) {
      settled = true;
      break;
    }
  }
  if (!settled && ex.change > 1e-6 * std::max(1.0, std::abs(ex.value))) {
    throw SlowConvergence("H^p dilation ladder did not settle by r = 1 - 2^-10");
  }
  hs.lhs = ex.value;
  hs.boundary_lhs = sphere_mean([&](const Vector& z) { return std::pow(std::abs(f(z)), p_exp); }, p, kDegree);
  hs.rhs = hardy_stein_rhs(u, p_exp, p, 1.0, 48);
  hs.residual = std::abs(hs.lhs - hs.rhs) / std::abs(hs.lhs);
  hs.boundary_residual = std::abs(hs.boundary_lhs - hs.rhs) / std::abs(hs.boundary_lhs);
  hs.passed = hs.residual < tolerance && hs.boundary_residual < tolerance && hs.extension_error < 1e-6;
  return hs;
}

CheckResult green_poisson_gradient_check(const Params& p, const Vector& x, const Vector& y, double h,
                                         double tolerance) {
  if (!on_sphere(y)) throw NotOnSphere("gradient check needs |y| = 1");
  if (!(norm(x) < 1.0)) throw OutsideBall("gradient check needs |x| < 1");
  if (!(h > 0.0 && h < 0.25)) throw InvalidParams("step must lie in (0, 1/4)");
  constexpr double kTol = 1e-13;
  const double g1 = green_direct(p, x, (1.0 - h) * y, kTol).value();
  const double g2 = green_direct(p, x, (1.0 - 2.0 * h) * y, kTol).value();
  CheckResult c;
  c.check = "gradient-poisson";
  c.d = p.d;
  c.k = p.k;
  c.point = x;
  c.tolerance = tolerance;
  c.lhs = p.d_k * (4.0 * g1 - g2) / (2.0 * h);
  c.rhs = poisson(p, x, y, kTol);
  c.residual = scaled_difference(c.lhs, c.rhs);
  c.passed = c.residual < tolerance;
  return c;
}

}  // namespace dunkl
