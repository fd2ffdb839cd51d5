#include "dunkl/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "dunkl/kernels.hpp"

namespace dunkl {

namespace {

constexpr double kRoundoffResidual = 1e-9;
constexpr double kRatioLow = 3.5;
constexpr double kRatioHigh = 4.5;
constexpr double kPoleMargin = 0.05;

bool stencil_fits(const ScalarField& u, const Vector& x, double h) {
  if (!u.contains(x) || !u.contains(reflect(x))) return false;
  Vector s = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = x[i] + h;
    if (!u.contains(s)) return false;
    s[i] = x[i] - h;
    if (!u.contains(s)) return false;
    s[i] = x[i];
  }
  return true;
}

double sum_of_magnitudes(const LaplacianTerms& t) {
  return std::abs(t.laplacian) + std::abs(t.gradient) + std::abs(t.reflection);
}

bool away_from_orbit(const Vector& x, const Vector& y, double margin) {
  return std::min(distance(x, y), reflected_distance(x, y)) > margin;
}

}  // namespace

double default_step(const Vector& x) { return 1e-4 * (1.0 + norm(x)); }

LaplacianTerms dunkl_laplacian_terms(const ScalarField& u, const Params& p, const Vector& x, double h) {
  if (!(h > 0.0)) throw InvalidParams("finite-difference step must be positive");
  if (!stencil_fits(u, x, h)) {
    throw StencilOutsideRegion("stencil of step " + std::to_string(h) + " leaves the region of " + u.label);
  }
  const double x1 = x[0];
  const bool even = u.parity == Parity::EvenInX1;
  if (std::abs(x1) <= 10.0 * h && !even) {
    throw TooCloseToWall("point within 10h of the wall for a field not even in x_1");
  }

  const double u0 = u(x);
  Vector s = x;
  double lap = 0.0;
  double d1 = 0.0;
  double d11 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = x[i] + h;
    const double up = u(s);
    s[i] = x[i] - h;
    const double um = u(s);
    s[i] = x[i];
    const double second = ((up - u0) + (um - u0)) / (h * h);
    lap += second;
    if (i == 0) {
      d1 = (up - um) / (2.0 * h);
      d11 = second;
    }
  }

  LaplacianTerms t;
  t.laplacian = lap;
  if (even && std::abs(x1) < h) {
    t.gradient = 2.0 * p.k * d11;
    t.reflection = 0.0;
  } else {
    t.gradient = 2.0 * p.k * d1 / x1;
    t.reflection = even ? 0.0 : -p.k * (u0 - u(reflect(x))) / (x1 * x1);
  }
  return t;
}

double dunkl_laplacian(const ScalarField& u, const Params& p, const Vector& x, double h) {
  return dunkl_laplacian_terms(u, p, x, h).value();
}

Vector gradient(const ScalarField& u, const Vector& x, double h) {
  Vector g(x.size());
  Vector s = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s[i] = x[i] + h;
    const double up = u(s);
    s[i] = x[i] - h;
    const double um = u(s);
    s[i] = x[i];
    g[i] = (up - um) / (2.0 * h);
  }
  return g;
}

ScalarField kelvin(const ScalarField& u, const Params& p) {
  ScalarField k;
  const double exponent = p.newton_exponent();
  k.eval = [u, exponent](const Vector& x) { return std::pow(norm(x), exponent) * u(invert(x)); };
  k.label = "K[" + u.label + "]";
  k.region = [u](const Vector& x) { return norm(x) > kPoleMargin && u.contains(invert(x)); };
  k.parity = u.parity;
  return k;
}

Vector catalog_pole(int d) {
  Vector y(static_cast<std::size_t>(d));
  y[0] = 0.3;
  if (d >= 2) y[1] = 0.2;
  return y;
}

Vector catalog_boundary_point(int d) {
  Vector z(static_cast<std::size_t>(d));
  if (d == 1) {
    z[0] = 1.0;
  } else {
    z[0] = 0.6;
    z[1] = 0.8;
  }
  return z;
}

std::vector<ScalarField> harmonic_catalog(const Params& p, double tol) {
  const int d = p.d;
  const double k = p.k;
  std::vector<ScalarField> out;
  out.push_back({[](const Vector&) { return 1.0; }, "1", nullptr, Parity::EvenInX1});

  if (d >= 2) {
    out.push_back({[](const Vector& x) { return x[1]; }, "x2", nullptr, Parity::EvenInX1});
    out.push_back({[](const Vector& x) { return x[0] * x[1]; }, "x1*x2", nullptr, Parity::None});
    out.push_back({[k](const Vector& x) { return x[0] * x[0] - (1.0 + 2.0 * k) * x[1] * x[1]; },
                   "x1^2-(1+2k)*x2^2", nullptr, Parity::EvenInX1});
  } else {
    const double e = p.newton_exponent();
    auto off_origin = [](const Vector& x) { return norm(x) > kPoleMargin; };
    out.push_back({[](const Vector& x) { return x[0]; }, "x1", nullptr, Parity::None});
    out.push_back({[e](const Vector& x) { return std::pow(norm(x), e); }, "|x|^(1-2k)", off_origin,
                   Parity::EvenInX1});
    out.push_back({[e](const Vector& x) { return std::pow(norm(x), e) * x[0] / norm2(x); }, "x1*|x|^(-1-2k)",
                   off_origin, Parity::None});
  }

  const Vector y0 = catalog_pole(d);
  const Vector z = catalog_boundary_point(d);
  out.push_back({[p, y0, tol](const Vector& x) { return newton(p, x, y0, tol).value(); }, "N(.,y0)",
                 [y0](const Vector& x) { return away_from_orbit(x, y0, kPoleMargin); }, Parity::None});
  out.push_back({[p, z, tol](const Vector& x) { return poisson(p, x, z, tol); }, "P(.,z)",
                 [](const Vector& x) { return norm(x) < 0.9; }, Parity::None});
  out.push_back({[p, y0, tol](const Vector& x) { return green_direct(p, x, y0, tol).value(); }, "G(.,y0)",
                 [y0](const Vector& x) { return norm(x) < 1.0 && away_from_orbit(x, y0, kPoleMargin); },
                 Parity::None});
  return out;
}

HarmonicityReport verify_harmonicity(const ScalarField& u, const Params& p, const std::vector<Vector>& sample,
                                     double h) {
  HarmonicityReport r;
  r.label = u.label;
  r.min_ratio = std::numeric_limits<double>::infinity();
  r.max_ratio = 0.0;
  double worst = -1.0;
  for (const Vector& x : sample) {
    const LaplacianTerms coarse = dunkl_laplacian_terms(u, p, x, h);
    const LaplacianTerms fine = dunkl_laplacian_terms(u, p, x, 0.5 * h);
    const double res_coarse = std::abs(coarse.value());
    const double res_fine = std::abs(fine.value());
    // Second differences carry roundoff of order eps |u| / h^2, so |u| / h^2 joins the scale.
    const double hf = 0.5 * h;
    const double scale =
        std::max(sum_of_magnitudes(fine) + std::abs(u(x)) / (hf * hf), std::numeric_limits<double>::min());
    const double normalized = res_fine / scale;
    const double ratio = res_fine > 0.0 ? res_coarse / res_fine : std::numeric_limits<double>::infinity();

    ++r.points;
    r.max_residual = std::max(r.max_residual, res_fine);
    r.max_normalized_residual = std::max(r.max_normalized_residual, normalized);
    const bool roundoff = normalized <= kRoundoffResidual;
    if (!roundoff) {
      r.min_ratio = std::min(r.min_ratio, ratio);
      r.max_ratio = std::max(r.max_ratio, ratio);
    }
    const bool ok = roundoff || (ratio >= kRatioLow && ratio <= kRatioHigh);
    if (!ok) ++r.failures;
    const double badness = ok ? normalized : 1.0 + normalized;
    if (badness > worst) {
      worst = badness;
      r.worst_point = x;
    }
  }
  if (!std::isfinite(r.min_ratio)) r.min_ratio = 0.0;
  r.passed = r.failures == 0 && r.points > 0;
  return r;
}

std::vector<Vector> harmonicity_sample(const ScalarField& u, int d, int n, std::uint64_t seed, double h,
                                       double extent) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::vector<Vector> out;
  const bool even = u.parity == Parity::EvenInX1;
  for (long attempt = 0; static_cast<int>(out.size()) < n; ++attempt) {
    if (attempt > 1000L * n + 100000L) throw InvalidParams("region of " + u.label + " is too small to sample");
    Vector x(static_cast<std::size_t>(d));
    for (double& c : x) c = coord(rng);
    if (!even && std::abs(x[0]) <= 20.0 * h) continue;
    if (!stencil_fits(u, x, h)) continue;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace dunkl
