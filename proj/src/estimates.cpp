#include "dunkl/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "dunkl/kernels.hpp"

namespace dunkl {

namespace {

struct Distances {
  double r;     // |x - y|
  double s;     // |x - sigma y|
  double eta;   // |x_1 y_1|
  double phi;   // max(r, s)
  double near;  // min(r, s)
};

Distances distances(const Vector& x, const Vector& y) {
  Distances d;
  d.r = distance(x, y);
  d.s = reflected_distance(x, y);
  d.eta = std::abs(x[0] * y[0]);
  d.phi = std::max(d.r, d.s);
  d.near = std::min(d.r, d.s);
  return d;
}

double cap1(double v) { return std::min(1.0, v); }

/// Uniform doubles from the top 53 bits and Box-Muller normals, so scans depend only on
/// the standardized mt19937_64 stream.
class ScanRng {
 public:
  explicit ScanRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  double log_uniform(double lo_exp, double hi_exp) { return std::pow(10.0, uniform(lo_exp, hi_exp)); }
  double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do u = uniform();
    while (u == 0.0);
    const double v = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    spare_ = radius * std::sin(2.0 * std::numbers::pi * v);
    has_spare_ = true;
    return radius * std::cos(2.0 * std::numbers::pi * v);
  }

  Vector direction(int d) {
    while (true) {
      Vector v(static_cast<std::size_t>(d));
      for (double& c : v) c = normal();
      const double n = norm(v);
      if (n > 1e-12) return (1.0 / n) * v;
    }
  }

  Vector ball(int d, double radius = 1.0) {
    return (radius * std::pow(uniform(), 1.0 / d)) * direction(d);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum Stratum { Bulk, NearSphere, NearWall, NearDiagonal, NearReflected, StratumCount };

Vector near_sphere_point(ScanRng& rng, int d, double lo_exp, double hi_exp) {
  return (1.0 - rng.log_uniform(lo_exp, hi_exp)) * rng.direction(d);
}

Vector near_wall_point(ScanRng& rng, int d, double radius) {
  while (true) {
    Vector x = rng.ball(d, radius);
    x[0] = rng.sign() * rng.log_uniform(-5.0, -2.0);
    if (norm(x) < radius) return x;
  }
}

Vector perturb(ScanRng& rng, const Vector& x, double lo_exp, double hi_exp) {
  return x + rng.log_uniform(lo_exp, hi_exp) * rng.direction(static_cast<int>(x.size()));
}

constexpr double kExclusion = 1e-6;
constexpr double kPoissonMaxRadius = 0.999;

/// Draws one pair for the given stratum; returns false when the draw must be repeated.
bool draw_pair(ScanRng& rng, const ScanConfig& cfg, int d, Stratum st, Vector& x, Vector& y) {
  switch (cfg.domain) {
    case ScanDomain::BallPairs:
    case ScanDomain::Line: {
      switch (st) {
        case Bulk:
          x = rng.ball(d);
          y = rng.ball(d);
          break;
        case NearSphere:
          x = near_sphere_point(rng, d, -4.0, -2.0);
          y = rng.uniform() < 0.5 ? near_sphere_point(rng, d, -4.0, -2.0) : rng.ball(d);
          break;
        case NearWall:
          x = near_wall_point(rng, d, 1.0);
          y = rng.uniform() < 0.5 ? near_wall_point(rng, d, 1.0) : rng.ball(d);
          break;
        case NearDiagonal:
          x = rng.ball(d);
          y = perturb(rng, x, -5.0, -2.0);
          break;
        default:
          x = rng.ball(d);
          y = perturb(rng, reflect(x), -5.0, -2.0);
          break;
      }
      return norm(x) < 1.0 && norm(y) < 1.0;
    }
    case ScanDomain::FixedPole: {
      y = cfg.pole;
      switch (st) {
        case Bulk: x = rng.ball(d); break;
        case NearSphere: x = near_sphere_point(rng, d, -4.0, -2.0); break;
        case NearWall: x = near_wall_point(rng, d, 1.0); break;
        case NearDiagonal: x = perturb(rng, y, -5.0, -2.0); break;
        default: x = perturb(rng, reflect(y), -5.0, -2.0); break;
      }
      return norm(x) < 1.0;
    }
    case ScanDomain::BallSphere: {
      y = rng.direction(d);
      switch (st) {
        case Bulk: x = rng.ball(d, kPoissonMaxRadius); break;
        case NearSphere: x = near_sphere_point(rng, d, -3.0, -2.0); break;
        case NearWall:
          x = near_wall_point(rng, d, kPoissonMaxRadius);
          if (rng.uniform() < 0.5 && d >= 2) {
            y[0] = rng.sign() * rng.log_uniform(-5.0, -2.0);
            y = (1.0 / norm(y)) * y;
          }
          break;
        case NearDiagonal: x = perturb(rng, (1.0 - rng.log_uniform(-3.0, -1.0)) * y, -3.0, -1.5); break;
        default: x = perturb(rng, (1.0 - rng.log_uniform(-3.0, -1.0)) * reflect(y), -3.0, -1.5); break;
      }
      return norm(x) <= kPoissonMaxRadius;
    }
  }
  return false;
}

std::string join_coords(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ';';
    os << v[i];
  }
  return os.str();
}

Vector parse_coords(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return Vector(std::move(out));
}

bool same_k(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

}  // namespace

double log_guard(double s) { return std::max(1.0, std::log(std::max(s, 1.0))); }

double newton_envelope(const Params& p, const Vector& x, const Vector& y) {
  const Distances g = distances(x, y);
  const double k = p.k;
  if (p.d == 1) return std::pow(std::abs(x[0]) + std::abs(y[0]), 1.0 - 2.0 * k);
  if (g.near == 0.0) return std::numeric_limits<double>::infinity();
  const double lead = std::pow(g.phi, -2.0 * k);
  switch (p.d) {
    case 2: return lead * log_guard(g.eta / (g.r * g.r));
    case 3: return lead / g.r;
    case 4: return lead / (g.r * g.r) * log_guard(g.eta / (g.s * g.s));
    default: return lead / (g.r * g.r) * std::pow(g.near, 4.0 - p.d);
  }
}

double green_envelope(const Params& p, const Vector& x, const Vector& y) {
  const Distances g = distances(x, y);
  const double xi = delta(x) * delta(y);
  const double k = p.k;
  if (p.d == 1) {
    const double root = std::sqrt(xi);
    const double tail = g.r > 0.0 ? cap1(root / g.r) : 1.0;
    return root * std::pow(std::abs(x[0]) + std::abs(y[0]), 1.0 - 2.0 * k) * tail;
  }
  if (g.near == 0.0) return std::numeric_limits<double>::infinity();
  const double lead = std::pow(g.phi, -2.0 * k);
  const double r2 = g.r * g.r;
  const double s2 = g.s * g.s;
  const double near2 = g.near * g.near;
  switch (p.d) {
    case 2:
      return lead * cap1(xi / r2) * log_guard(std::min(g.eta, xi) / r2) * log_guard(g.eta / std::max(xi, s2));
    case 3: {
      const double root = std::sqrt(xi);
      return lead / g.r * cap1(root / g.r) * cap1(root / g.near);
    }
    case 4: return lead / r2 * cap1(xi / near2) * log_guard(std::min(g.eta, xi) / s2);
    default: return lead * std::pow(g.near, 4.0 - p.d) / r2 * cap1(xi / near2);
  }
}

double green_envelope_general(const Params& p, const Vector& x, const Vector& y, double tol) {
  const double xi = delta(x) * delta(y);
  if (xi == 0.0) return 0.0;
  if (near_orbit(x, y)) return std::numeric_limits<double>::infinity();
  const PairGeometry g = PairGeometry::of(x, y);
  const double q = p.k + 0.5 * p.d - 1.0;
  auto integrand = [&](double a) { return std::exp(-q * std::log(a)) / (1.0 + a / xi); };
  if (g.eta == 0.0) return integrand(g.dist2);
  auto f = [&](const IntervalPoint& pt) { return integrand(g.norm_id(pt)); };
  return p.c_k * integrate_jacobi(f, p.k, g.options(tol)).value;
}

double poisson_envelope(const Params& p, const Vector& x, const Vector& y) {
  if (std::abs(norm(y) - 1.0) > 1e-12) throw NotOnSphere();
  const double rx = norm(x);
  const Distances g = distances(x, y);
  if (p.d == 1) return (1.0 - rx) / g.r;
  const double gap = (1.0 - rx) * (1.0 + rx);
  const double lead = gap * std::pow(g.phi, -2.0 * p.k) / (g.r * g.r);
  if (p.d == 2) return lead * log_guard(g.eta / (g.s * g.s));
  return lead * std::pow(g.near, 2.0 - p.d);
}

double boundary_decay_envelope(const Params& p, const Vector& x, const Vector& y0, double tol) {
  return delta(x) * newton(p, x, y0, tol).value();
}

Vector boundary_decay_pole(int d) {
  Vector y(static_cast<std::size_t>(d));
  y[0] = 0.2;
  if (d >= 2) y[1] = 0.1;
  return y;
}

double elementary_ratio(double p_exp, double a, double b) {
  if (!(a > 0.0) || !(b > a)) throw InvalidParams("elementary bound needs 0 < a < b");
  if (!(p_exp > 0.0)) throw InvalidParams("elementary bound needs p > 0");
  const double g = (b - a) / a;
  return -std::expm1(-p_exp * std::log1p(g)) * (1.0 + g) / g;
}

Band elementary_band(double p_exp) {
  Band band{std::numeric_limits<double>::infinity(), 0.0};
  const double gaps[] = {1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 3.0, 10.0, 1e2, 1e3, 1e4, 1e6, 1e8, 1e10, 1e12};
  for (int i = 0; i <= 60; ++i) {
    const double a = std::pow(10.0, -6.0 + 0.2 * i);
    for (double gap : gaps) {
      const double b = a * (1.0 + gap);
      const double v = elementary_ratio(p_exp, a, b);
      band.lower = std::min(band.lower, v);
      band.upper = std::max(band.upper, v);
    }
  }
  return band;
}

ElementaryCheck elementary_bound_check(double p_exp, double a, double b) {
  const Band band = elementary_band(p_exp);
  ElementaryCheck c;
  c.ratio = elementary_ratio(p_exp, a, b);
  c.constant = 1.01 * std::max(band.upper, 1.0 / band.lower);
  c.passed = c.ratio >= 1.0 / c.constant && c.ratio <= c.constant;
  return c;
}

std::string_view to_string(Theorem t) {
  switch (t) {
    case Theorem::Newton: return "newton-estimate";
    case Theorem::Green: return "green-estimate";
    case Theorem::GreenIntegral: return "green-integral-estimate";
    case Theorem::Poisson: return "poisson-estimate";
    case Theorem::BoundaryDecay: return "boundary-decay";
    case Theorem::DimensionOne: return "line-estimate";
  }
  return "unknown";
}

Theorem parse_theorem(std::string_view name) {
  struct Alias {
    std::string_view name;
    Theorem theorem;
  };
  static constexpr Alias aliases[] = {
      {"newton-estimate", Theorem::Newton},          {"newton-5.1", Theorem::Newton},
      {"green-estimate", Theorem::Green},            {"green-5.2", Theorem::Green},
      {"green-integral-estimate", Theorem::GreenIntegral}, {"green-3.2", Theorem::GreenIntegral},
      {"poisson-estimate", Theorem::Poisson},        {"poisson-5.8", Theorem::Poisson},
      {"boundary-decay", Theorem::BoundaryDecay},    {"corollary-3.5", Theorem::BoundaryDecay},
      {"line-estimate", Theorem::DimensionOne},      {"d1-remark", Theorem::DimensionOne},
  };
  for (const Alias& a : aliases) {
    if (a.name == name) return a.theorem;
  }
  throw InvalidParams("unknown theorem selector '" + std::string(name) + "'");
}

bool ScanReport::finite() const {
  return std::isfinite(ratio_min) && std::isfinite(ratio_max) && ratio_min > 0.0 && ratio_max > 0.0;
}

std::string scan_csv_header() {
  return "theorem,d,k,n_samples,seed,ratio_min,ratio_max,argmin_x,argmin_y,argmax_x,argmax_y";
}

std::string to_csv_row(const ScanReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << r.theorem << ',' << r.d << ',' << r.k << ',' << r.n_samples << ',' << r.seed << ',' << r.ratio_min << ','
     << r.ratio_max << ',' << join_coords(r.argmin_x) << ',' << join_coords(r.argmin_y) << ','
     << join_coords(r.argmax_x) << ',' << join_coords(r.argmax_y);
  return os.str();
}

std::vector<ScanReport> read_scan_reports(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot open scan report file " + path);
  std::vector<ScanReport> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("theorem,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() < 7) throw InvalidParams("malformed scan report line: " + line);
    f.resize(11);
    ScanReport r;
    r.theorem = f[0];
    r.d = std::stoi(f[1]);
    r.k = std::stod(f[2]);
    r.n_samples = std::stoi(f[3]);
    r.seed = std::stoull(f[4]);
    r.ratio_min = std::stod(f[5]);
    r.ratio_max = std::stod(f[6]);
    r.argmin_x = parse_coords(f[7]);
    r.argmin_y = parse_coords(f[8]);
    r.argmax_x = parse_coords(f[9]);
    r.argmax_y = parse_coords(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

ScanReport ratio_scan(const PairFunction& kernel, const PairFunction& envelope, const Params& p,
                      const ScanConfig& cfg, std::string theorem) {
  if (cfg.n <= 0) throw InvalidParams("scan needs a positive sample count");
  if (cfg.domain == ScanDomain::FixedPole && cfg.pole.size() != static_cast<std::size_t>(p.d)) {
    throw InvalidParams("fixed-pole scan needs a pole of dimension d");
  }
  ScanRng rng(cfg.seed);
  ScanReport r;
  r.theorem = std::move(theorem);
  r.d = p.d;
  r.k = p.k;
  r.n_samples = cfg.n;
  r.seed = cfg.seed;
  r.ratio_min = std::numeric_limits<double>::infinity();
  r.ratio_max = 0.0;

  Vector x;
  Vector y;
  for (int i = 0; i < cfg.n; ++i) {
    const Stratum st = static_cast<Stratum>(i % StratumCount);
    while (true) {
      if (!draw_pair(rng, cfg, p.d, st, x, y)) continue;
      const double cutoff = kExclusion * (1.0 + norm(x) + norm(y));
      if (std::min(distance(x, y), reflected_distance(x, y)) < cutoff) continue;
      break;
    }
    const double ratio = kernel(x, y) / envelope(x, y);
    if (ratio < r.ratio_min || std::isnan(ratio)) {
      r.ratio_min = std::isnan(ratio) ? std::numeric_limits<double>::quiet_NaN() : ratio;
      r.argmin_x = x;
      r.argmin_y = y;
    }
    if (ratio > r.ratio_max || std::isnan(ratio)) {
      r.ratio_max = std::isnan(ratio) ? std::numeric_limits<double>::quiet_NaN() : ratio;
      r.argmax_x = x;
      r.argmax_y = y;
    }
    if (std::isnan(ratio)) break;
  }
  return r;
}

ScanReport scan_theorem(Theorem t, const Params& p, int n, std::uint64_t seed, double tol) {
  ScanConfig cfg;
  cfg.n = n;
  cfg.seed = seed;
  PairFunction kernel;
  PairFunction envelope;
  switch (t) {
    case Theorem::Newton:
      kernel = [&](const Vector& x, const Vector& y) { return newton(p, x, y, tol).value(); };
      envelope = [&](const Vector& x, const Vector& y) { return newton_envelope(p, x, y); };
      break;
    case Theorem::Green:
      kernel = [&](const Vector& x, const Vector& y) { return green_direct(p, x, y, tol).value(); };
      envelope = [&](const Vector& x, const Vector& y) { return green_envelope(p, x, y); };
      break;
    case Theorem::GreenIntegral:
      kernel = [&](const Vector& x, const Vector& y) { return green_direct(p, x, y, tol).value(); };
      envelope = [&](const Vector& x, const Vector& y) { return green_envelope_general(p, x, y, tol); };
      break;
    case Theorem::Poisson:
      cfg.domain = ScanDomain::BallSphere;
      kernel = [&](const Vector& x, const Vector& y) { return poisson(p, x, y, tol); };
      envelope = [&](const Vector& x, const Vector& y) { return poisson_envelope(p, x, y); };
      break;
    case Theorem::BoundaryDecay:
      cfg.domain = ScanDomain::FixedPole;
      cfg.pole = boundary_decay_pole(p.d);
      kernel = [&](const Vector& x, const Vector& y) { return green_direct(p, x, y, tol).value(); };
      envelope = [&](const Vector& x, const Vector& y) { return boundary_decay_envelope(p, x, y, tol); };
      break;
    case Theorem::DimensionOne:
      if (p.d != 1) throw InvalidParams("the line estimate is for d = 1");
      cfg.domain = ScanDomain::Line;
      kernel = [&](const Vector& x, const Vector& y) { return newton(p, x, y, tol).value(); };
      envelope = [&](const Vector& x, const Vector& y) { return newton_envelope(p, x, y); };
      break;
  }
  return ratio_scan(kernel, envelope, p, cfg, std::string(to_string(t)));
}

BaselineCheck compare_to_baseline(const ScanReport& r, const std::vector<ScanReport>& baselines, double slack) {
  BaselineCheck c;
  for (const ScanReport& b : baselines) {
    if (b.theorem != r.theorem || b.d != r.d || !same_k(b.k, r.k) || b.n_samples != r.n_samples || b.seed != r.seed) {
      continue;
    }
    c.found = true;
    c.baseline_min = b.ratio_min;
    c.baseline_max = b.ratio_max;
    c.within = r.finite() && r.ratio_max <= slack * b.ratio_max && r.ratio_min >= b.ratio_min / slack;
    return c;
  }
  return c;
}

}  // namespace dunkl
