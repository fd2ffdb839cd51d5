#include "dunkl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dunkl {

namespace {

constexpr double kSphereTolerance = 1e-12;

double one_minus_norm2(const Vector& x) {
  const double r = norm(x);
  return (1.0 - r) * (1.0 + r);
}

void require_in_closed_ball(const Vector& x) {
  if (norm(x) > 1.0 + 1e-12) throw OutsideBall();
}

void require_dimension(const Params& p, const Vector& x, const Vector& y) {
  if (x.size() != static_cast<std::size_t>(p.d) || y.size() != static_cast<std::size_t>(p.d)) {
    throw InvalidParams("point dimension does not match d = " + std::to_string(p.d));
  }
}

/// int w(t) A(t)^{-q} dt (without c_k), where A is the norm identity of g.
double jacobi_power_integral(const Params& p, const PairGeometry& g, double q, double tol) {
  if (g.eta == 0.0) return std::pow(g.dist2, -q) / p.c_k;
  auto f = [&](const IntervalPoint& pt) { return std::exp(-q * std::log(g.norm_id(pt))); };
  return integrate_jacobi(f, p.k, g.options(tol)).value;
}

/// log1p(a) / a, continuous at a = 0.
double log1p_ratio(double a) {
  if (std::abs(a) < 1e-5) return 1.0 - a / 2.0 + a * a / 3.0 - a * a * a / 4.0;
  return std::log1p(a) / a;
}

constexpr double kSeriesThreshold = 0.05;
constexpr int kSeriesTerms = 24;

/// Printed k = 1, d = 2 Newton kernel from |x - y|^2 and x_1 y_1.
double newton_k1d2(double zeta, double eta) {
  const double a = 4.0 * eta / zeta;
  if (std::abs(a) <= kSeriesThreshold) {
    double sum = 0.0;
    double power = 1.0;
    for (int m = 1; m <= kSeriesTerms; ++m) {
      sum += ((m % 2 == 1) ? 1.0 : -1.0) * power / (m * (m + 1.0));
      power *= a;
    }
    return sum / (std::numbers::pi * zeta);
  }
  const double zeta_ref = zeta + 4.0 * eta;
  const double log_ratio = 0.5 * std::log1p(a);
  return (zeta_ref / (2.0 * eta * eta) * log_ratio - 1.0 / eta) / (4.0 * std::numbers::pi);
}

double poisson_k1d2(double zeta, double eta, double one_minus_x2) {
  const double a = 4.0 * eta / zeta;
  if (std::abs(a) <= kSeriesThreshold) {
    double sum = 0.0;
    double power = 1.0;
    for (int m = 0; m < kSeriesTerms; ++m) {
      sum += power / (m + 2.0);
      power *= -a;
    }
    return 2.0 * one_minus_x2 / (zeta * zeta) * sum;
  }
  const double log_ratio = -0.5 * std::log1p(a);
  return one_minus_x2 / (4.0 * eta * eta) * (2.0 * eta / zeta + log_ratio);
}

/// 1 - 2<x, y> + |x|^2 |y|^2 = |x|^2 |x* - y|^2, written as |x - y|^2 + (1-|x|^2)(1-|y|^2)
/// so that it stays accurate near the sphere and finite at x = 0.
double inverted_distance2(const Vector& x, const Vector& y) {
  const double r = distance(x, y);
  return r * r + std::max(0.0, one_minus_norm2(x)) * std::max(0.0, one_minus_norm2(y));
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Newton: return "newton";
    case KernelKind::Green: return "green";
    case KernelKind::Poisson: return "poisson";
    case KernelKind::NewtonW: return "newton-w";
    case KernelKind::GreenW: return "green-w";
    case KernelKind::PoissonW: return "poisson-w";
    case KernelKind::NewtonDyson: return "newton-dyson";
    case KernelKind::GreenDyson: return "green-dyson";
    case KernelKind::PoissonDyson: return "poisson-dyson";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  for (KernelKind k : {KernelKind::Newton, KernelKind::Green, KernelKind::Poisson, KernelKind::NewtonW,
                       KernelKind::GreenW, KernelKind::PoissonW, KernelKind::NewtonDyson,
                       KernelKind::GreenDyson, KernelKind::PoissonDyson}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidParams("unknown kernel '" + std::string(name) + "'");
}

KernelKind base_kind(KernelKind kind) {
  switch (kind) {
    case KernelKind::Newton:
    case KernelKind::NewtonW:
    case KernelKind::NewtonDyson: return KernelKind::Newton;
    case KernelKind::Green:
    case KernelKind::GreenW:
    case KernelKind::GreenDyson: return KernelKind::Green;
    default: return KernelKind::Poisson;
  }
}

PairGeometry PairGeometry::of(const Vector& x, const Vector& y) {
  PairGeometry g;
  const double r = distance(x, y);
  const double s = reflected_distance(x, y);
  g.dist2 = r * r;
  g.reflected_dist2 = s * s;
  g.eta = x[0] * y[0];
  return g;
}

JacobiOptions PairGeometry::options(double tol) const {
  JacobiOptions opts;
  opts.tol = tol;
  if (eta > 0.0) {
    opts.right_scale = dist2 / (2.0 * eta);
  } else if (eta < 0.0) {
    opts.left_scale = reflected_dist2 / (-2.0 * eta);
  }
  return opts;
}

ExtendedValue newton(const Params& p, const Vector& x, const Vector& y, double tol) {
  require_dimension(p, x, y);
  if (near_orbit(x, y)) return ExtendedValue::infinite();
  const PairGeometry g = PairGeometry::of(x, y);
  const double q = p.k + 0.5 * p.d - 1.0;
  return ExtendedValue::finite(p.newton_prefactor() * jacobi_power_integral(p, g, q, tol));
}

ExtendedValue green_direct(const Params& p, const Vector& x, const Vector& y, double tol) {
  require_dimension(p, x, y);
  require_in_closed_ball(x);
  require_in_closed_ball(y);
  if (near_orbit(x, y)) return ExtendedValue::infinite();
  const double gap = std::max(0.0, one_minus_norm2(x)) * std::max(0.0, one_minus_norm2(y));
  if (gap == 0.0) return ExtendedValue::finite(0.0);
  const PairGeometry g = PairGeometry::of(x, y);
  const double q = p.k + 0.5 * p.d - 1.0;
  auto difference = [&](double a) { return std::exp(-q * std::log(a)) * -std::expm1(-q * std::log1p(gap / a)); };
  double integral = 0.0;
  if (g.eta == 0.0) {
    integral = difference(g.dist2) / p.c_k;
  } else {
    auto f = [&](const IntervalPoint& pt) { return difference(g.norm_id(pt)); };
    integral = integrate_jacobi(f, p.k, g.options(tol)).value;
  }
  return ExtendedValue::finite(p.newton_prefactor() * integral);
}

ExtendedValue green_kelvin(const Params& p, const Vector& x, const Vector& y, double tol) {
  require_dimension(p, x, y);
  require_in_closed_ball(x);
  require_in_closed_ball(y);
  if (norm(x) <= kOriginCutoff) return green_direct(p, x, y, tol);
  if (near_orbit(x, y)) return ExtendedValue::infinite();
  // The two Newton terms nearly cancel close to the sphere; evaluate them tighter.
  const double inner_tol = std::max(1e-14, tol * 1e-3);
  const ExtendedValue direct = newton(p, x, y, inner_tol);
  const ExtendedValue image = newton(p, invert(x), y, inner_tol);
  if (direct.is_infinite() || image.is_infinite()) return ExtendedValue::infinite();
  const double scale = std::pow(norm(x), p.newton_exponent());
  return ExtendedValue::finite(direct.value() - scale * image.value());
}

double poisson(const Params& p, const Vector& x, const Vector& y, double tol) {
  require_dimension(p, x, y);
  if (!(norm(x) < 1.0)) throw OutsideBall("Poisson kernel needs |x| < 1");
  if (std::abs(norm(y) - 1.0) > kSphereTolerance) throw NotOnSphere();
  const PairGeometry g = PairGeometry::of(x, y);
  const double q = p.k + 0.5 * p.d;
  return p.c_k * one_minus_norm2(x) * jacobi_power_integral(p, g, q, tol);
}

ExtendedValue closed_form_k1d2(KernelKind kind, const Vector& x, const Vector& y) {
  if (x.size() != 2 || y.size() != 2) throw InvalidParams("closed forms are for d = 2, k = 1");
  const PairGeometry g = PairGeometry::of(x, y);
  const KernelKind base = base_kind(kind);
  const bool invariant = kind == KernelKind::NewtonW || kind == KernelKind::GreenW || kind == KernelKind::PoissonW;
  if (kind == KernelKind::NewtonDyson || kind == KernelKind::GreenDyson || kind == KernelKind::PoissonDyson) {
    throw InvalidParams("Dyson kernels are evaluated by dyson()");
  }

  if (base == KernelKind::Poisson) {
    if (!(norm(x) < 1.0)) throw OutsideBall("Poisson kernel needs |x| < 1");
    if (std::abs(norm(y) - 1.0) > kSphereTolerance) throw NotOnSphere();
    const double gap = one_minus_norm2(x);
    if (invariant) return ExtendedValue::finite(2.0 * gap / (g.dist2 * g.reflected_dist2));
    return ExtendedValue::finite(poisson_k1d2(g.dist2, g.eta, gap));
  }

  if (near_orbit(x, y)) return ExtendedValue::infinite();
  const double pi = std::numbers::pi;
  auto newton_at = [&](double zeta, double eta) {
    return invariant ? log1p_ratio(4.0 * eta / zeta) / (pi * zeta) : newton_k1d2(zeta, eta);
  };
  if (base == KernelKind::Newton) return ExtendedValue::finite(newton_at(g.dist2, g.eta));

  require_in_closed_ball(x);
  require_in_closed_ball(y);
  // |x|^{-2} N(x*, y) with |x* - y|^2 = s / |x|^2 and x*_1 y_1 = x_1 y_1 / |x|^2; the
  // homogeneity N(lambda^2 zeta, lambda^2 eta) = N(zeta, eta) / lambda^2 removes |x|.
  const double s = inverted_distance2(x, y);
  if (norm(x) <= kOriginCutoff) {
    const double base_value = (1.0 / norm2(y) - 1.0) / (2.0 * pi);
    return ExtendedValue::finite(invariant ? 2.0 * base_value : base_value);
  }
  return ExtendedValue::finite(newton_at(g.dist2, g.eta) - newton_at(s, g.eta));
}

ExtendedValue w_invariant(KernelKind kind, const Params& p, const Vector& x, const Vector& y, double tol) {
  const Vector ys = reflect(y);
  switch (base_kind(kind)) {
    case KernelKind::Newton: return newton(p, x, y, tol) + newton(p, x, ys, tol);
    case KernelKind::Green: return green_direct(p, x, y, tol) + green_direct(p, x, ys, tol);
    default:
      return ExtendedValue::finite(poisson(p, x, y, tol) + poisson(p, x, ys, tol));
  }
}

ExtendedValue dyson(KernelKind kind, const Vector& x, const Vector& y) {
  if (x.size() != 2 || y.size() != 2) throw InvalidParams("Dyson kernels live in the plane");
  if (!(x[0] > x[1])) throw NotInChamber();
  if (!(y[0] >= y[1])) throw NotInChamber();
  const Vector xa = from_a1_basis(x);
  const Vector ya = from_a1_basis(y);
  const double pi_y = y[0] - y[1];
  const PairGeometry g = PairGeometry::of(xa, ya);
  const double pi = std::numbers::pi;

  switch (base_kind(kind)) {
    case KernelKind::Poisson: {
      if (!(norm(xa) < 1.0)) throw OutsideBall("Poisson kernel needs |x| < 1");
      if (std::abs(norm(ya) - 1.0) > kSphereTolerance) throw NotOnSphere();
      return ExtendedValue::finite(pi_y * pi_y * one_minus_norm2(xa) / (g.dist2 * g.reflected_dist2));
    }
    case KernelKind::Newton: {
      if (near_orbit(xa, ya)) return ExtendedValue::infinite();
      return ExtendedValue::finite(pi_y * pi_y * log1p_ratio(4.0 * g.eta / g.dist2) / (2.0 * pi * g.dist2));
    }
    default: {
      require_in_closed_ball(xa);
      require_in_closed_ball(ya);
      if (near_orbit(xa, ya)) return ExtendedValue::infinite();
      const double s = inverted_distance2(xa, ya);
      const double bracket = log1p_ratio(4.0 * g.eta / g.dist2) / g.dist2 - log1p_ratio(4.0 * g.eta / s) / s;
      return ExtendedValue::finite(pi_y * pi_y * bracket / (2.0 * pi));
    }
  }
}

ExtendedValue evaluate(KernelKind kind, const Params& p, const Vector& x, const Vector& y, double tol) {
  switch (kind) {
    case KernelKind::Newton: return newton(p, x, y, tol);
    case KernelKind::Green: return green_direct(p, x, y, tol);
    case KernelKind::Poisson: return ExtendedValue::finite(poisson(p, x, y, tol));
    case KernelKind::NewtonW:
    case KernelKind::GreenW:
    case KernelKind::PoissonW: return w_invariant(kind, p, x, y, tol);
    default:
      if (p.d != 2 || p.k != 1.0) throw InvalidParams("Dyson kernels require d = 2 and k = 1");
      return dyson(kind, x, y);
  }
}

}  // namespace dunkl
