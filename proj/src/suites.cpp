#include "dunkl/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dunkl/estimates.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/operator.hpp"
#include "dunkl/potential.hpp"

namespace dunkl {
namespace {

std::string describe(const Vector& v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << ')';
  return os.str();
}

/// Short form for check names.
std::string label(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string describe(const Vector& x, const Vector& y) { return "x=" + describe(x) + " y=" + describe(y); }

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double relative_error(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

class Tally {
 public:
  Tally(std::string name, double tolerance, bool informational = false) {
    check_.name = std::move(name);
    check_.tolerance = tolerance;
    check_.informational = informational;
    check_.max_residual = 0.0;
  }

  /// Records one case; `what` is only called for cases that become the worst one.
  void add(double residual, bool ok, const std::function<std::string()>& what) {
    ++check_.count;
    if (!ok) ++check_.failures;
    const double badness = std::isnan(residual) ? std::numeric_limits<double>::infinity() : residual;
    const bool worse = check_.count == 1 || (!ok && !worst_failed_) ||
                       ((!ok) == worst_failed_ && badness > worst_badness_);
    check_.max_residual = std::max(check_.max_residual, badness);
    if (worse) {
      worst_badness_ = badness;
      worst_failed_ = !ok;
      check_.worst = what();
    }
  }

  /// Residual compared with the tolerance.
  void add(double residual, const std::function<std::string()>& what) {
    add(residual, residual <= check_.tolerance, what);
  }

  /// Runs one case, turning a library error into a failed case.
  void guarded(const std::function<void()>& body, const std::function<std::string()>& what) {
    try {
      body();
    } catch (const InvalidParams&) {
      throw;
    } catch (const Error& e) {
      const std::string msg = e.what();
      add(std::numeric_limits<double>::infinity(), false, [&] { return what() + ": " + msg; });
    }
  }

  void note(std::string detail) { check_.detail = std::move(detail); }
  SuiteCheck done() const { return check_; }

 private:
  SuiteCheck check_;
  double worst_badness_ = -1.0;
  bool worst_failed_ = false;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(gen_); }
  double log_uniform(double lo_exp, double hi_exp) { return std::pow(10.0, uniform(lo_exp, hi_exp)); }
  double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }

  Vector on_sphere(int d) {
    std::normal_distribution<double> normal;
    for (;;) {
      Vector v(static_cast<std::size_t>(d));
      for (double& c : v) c = normal(gen_);
      const double r = norm(v);
      if (r > 1e-8) return (1.0 / r) * v;
    }
  }

  Vector in_ball(int d, double radius = 1.0) {
    return (radius * std::pow(uniform(), 1.0 / d)) * on_sphere(d);
  }

 private:
  std::mt19937_64 gen_;
};

bool well_separated(const Vector& x, const Vector& y, double margin) {
  return std::min(distance(x, y), reflected_distance(x, y)) > margin * (1.0 + norm(x) + norm(y));
}

int cases(const SuiteOptions& o, int fallback) { return o.n > 0 ? o.n : fallback; }

ScalarField field(std::function<double(const Vector&)> f, std::string label, Parity parity = Parity::None) {
  return ScalarField{std::move(f), std::move(label), nullptr, parity};
}

std::vector<SuiteCheck> harmonicity_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 50);
  constexpr double h = 0.01;
  std::vector<SuiteCheck> out;
  const auto catalog = harmonic_catalog(p);
  std::uint64_t salt = 0;
  auto run = [&](const ScalarField& u, double extent) {
    Tally t("harmonic " + u.label, 0.0);
    t.guarded(
        [&] {
          const auto sample = harmonicity_sample(u, p.d, n, o.seed + 1000 * salt, h, extent);
          const HarmonicityReport r = verify_harmonicity(u, p, sample, h);
          for (int i = 0; i < r.points; ++i) {
            const bool ok = i >= r.failures;
            t.add(r.max_normalized_residual, ok, [&] { return "worst point " + describe(r.worst_point); });
          }
          std::ostringstream os;
          os.precision(6);
          if (r.max_ratio > 0.0) {
            os << "h-halving ratios in [" << r.min_ratio << ", " << r.max_ratio << "], max residual "
               << r.max_residual;
          } else {
            os << "all residuals at roundoff level, max residual " << r.max_residual;
          }
          t.note(os.str());
        },
        [&] { return u.label; });
    ++salt;
    out.push_back(t.done());
  };
  for (const ScalarField& u : catalog) run(u, 1.0);
  for (const ScalarField& u : catalog) run(kelvin(u, p), 2.0);
  return out;
}

std::vector<SuiteCheck> closed_forms_suite(const SuiteOptions& o) {
  const Params p = make_params(2, 1.0);
  const int n = cases(o, 1000);
  constexpr double tol = 1e-9;
  Rng rng(o.seed);
  const KernelKind kinds[] = {KernelKind::Newton,  KernelKind::Green,  KernelKind::Poisson,
                              KernelKind::NewtonW, KernelKind::GreenW, KernelKind::PoissonW};
  std::vector<Tally> tallies;
  for (KernelKind kind : kinds) tallies.emplace_back(std::string("closed form ") + std::string(to_string(kind)), tol);

  for (int i = 0; i < n;) {
    const Vector x = rng.in_ball(2);
    const Vector y = rng.in_ball(2);
    if (std::abs(x[0]) < 0.02 || std::abs(y[0]) < 0.02 || !well_separated(x, y, 1e-3)) continue;
    ++i;
    const Vector z = (1.0 / norm(y)) * y;
    for (std::size_t j = 0; j < std::size(kinds); ++j) {
      const KernelKind kind = kinds[j];
      const bool on_sphere = base_kind(kind) == KernelKind::Poisson;
      const Vector& yy = on_sphere ? z : y;
      tallies[j].guarded(
          [&] {
            const double a = evaluate(kind, p, x, yy, o.tol).value();
            const double b = closed_form_k1d2(kind, x, yy).value();
            tallies[j].add(relative_error(a, b), [&] { return describe(x, yy); });
          },
          [&] { return describe(x, yy); });
    }
  }
  std::vector<SuiteCheck> out;
  for (const Tally& t : tallies) out.push_back(t.done());

  Tally pre("newton prefactor c_k C_k = 1/(4 pi)", 1e-14);
  const double expected = 1.0 / (4.0 * std::numbers::pi);
  pre.add(relative_error(p.newton_prefactor(), expected), [&] { return "c_k C_k = " + number(p.newton_prefactor()); });
  out.push_back(pre.done());
  return out;
}

std::vector<SuiteCheck> green_paths_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 1000);
  Rng rng(o.seed);
  Tally t("green kelvin vs direct", 1e-8);
  for (int i = 0; i < n;) {
    const Vector x = rng.in_ball(p.d);
    const Vector y = rng.in_ball(p.d);
    if (!well_separated(x, y, 1e-6)) continue;
    ++i;
    t.guarded(
        [&] {
          const double a = green_kelvin(p, x, y, o.tol).value();
          const double b = green_direct(p, x, y, o.tol).value();
          t.add(relative_error(a, b), [&] { return describe(x, y); });
        },
        [&] { return describe(x, y); });
  }
  return {t.done()};
}

Vector jensen_point(Rng& rng, int d) {
  Vector x(static_cast<std::size_t>(d));
  x[0] = rng.sign() * rng.uniform(0.15, 0.45);
  if (d >= 2) {
    const double room = std::sqrt(0.36 - x[0] * x[0]);
    Vector rest = rng.on_sphere(d - 1);
    const double r = room * rng.uniform();
    for (int i = 1; i < d; ++i) x[static_cast<std::size_t>(i)] = r * rest[static_cast<std::size_t>(i - 1)];
  }
  return x;
}

Vector exterior_pole(int d, double radius) {
  Vector y(static_cast<std::size_t>(d));
  if (d == 1) {
    y[0] = radius;
  } else {
    y[0] = 0.6 * radius;
    y[1] = 0.8 * radius;
  }
  return y;
}

std::vector<SuiteCheck> poisson_jensen_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 5);
  Rng rng(o.seed);
  std::vector<Vector> points;
  points.emplace_back(static_cast<std::size_t>(p.d));
  for (int i = 0; i < n; ++i) points.push_back(jensen_point(rng, p.d));

  struct Case {
    ScalarField u;
    std::function<double(const Vector&)> laplacian;
  };
  std::vector<Case> fields;
  const double d = p.d;
  const double k = p.k;
  fields.push_back({field([](const Vector& x) { return norm2(x); }, "|x|^2", Parity::EvenInX1),
                    [d, k](const Vector&) { return 2.0 * d + 4.0 * k; }});
  fields.push_back({field([](const Vector& x) { return norm2(x) * norm2(x); }, "|x|^4", Parity::EvenInX1),
                    [d, k](const Vector& x) { return (4.0 * d + 8.0 + 8.0 * k) * norm2(x); }});
  for (const ScalarField& u : harmonic_catalog(p)) {
    if (!u.region) fields.push_back({u, nullptr});
  }
  const Vector far = exterior_pole(p.d, 1.5);
  fields.push_back({field([p, far](const Vector& x) { return newton(p, x, far).value(); }, "N(.,y) |y|=1.5"), nullptr});

  std::vector<SuiteCheck> out;
  for (const Case& c : fields) {
    Tally t("poisson-jensen " + c.u.label, 1e-5);
    for (const Vector& x : points) {
      t.guarded(
          [&] {
            const CheckResult r = poisson_jensen_check(c.u, c.laplacian, p, x);
            t.add(r.residual, r.passed, [&] { return "x=" + describe(x); });
          },
          [&] { return "x=" + describe(x); });
    }
    out.push_back(t.done());
  }
  return out;
}

std::vector<SuiteCheck> hardy_stein_suite(const Params& p) {
  struct Case {
    BoundaryFunction f;
    ScalarField u;
    double p_exp;
    bool informational;
  };
  const std::size_t last = static_cast<std::size_t>(p.d - 1);
  std::vector<Case> cases_;
  if (p.d >= 2) {
    auto prod = [](const Vector& x) { return x[0] * x[1]; };
    cases_.push_back({{prod, "x1*x2"}, field(prod, "x1*x2"), 2.0, false});
  } else {
    auto lin = [](const Vector& x) { return x[0]; };
    cases_.push_back({{lin, "x1"}, field(lin, "x1"), 2.0, false});
  }
  auto shifted = [last](const Vector& x) { return 2.0 + x[last]; };
  const Parity parity = p.d >= 2 ? Parity::EvenInX1 : Parity::None;
  cases_.push_back({{shifted, "2+x_d"}, field(shifted, "2+x_d", parity), 3.0, false});
  cases_.push_back({{shifted, "2+x_d"}, field(shifted, "2+x_d", parity), 1.5, true});

  std::vector<SuiteCheck> out;
  for (const Case& c : cases_) {
    Tally t("hardy-stein " + c.f.label + " p=" + label(c.p_exp), 1e-3, c.informational);
    t.guarded(
        [&] {
          const HardyStein hs = hardy_stein_check(c.f, c.u, c.p_exp, p);
          t.add(std::max(hs.residual, hs.boundary_residual), hs.passed, [&] {
            std::ostringstream os;
            os.precision(10);
            os << "lhs " << hs.lhs << " rhs " << hs.rhs << " boundary " << hs.boundary_lhs << " extension error "
               << hs.extension_error;
            return os.str();
          });
        },
        [&] { return c.f.label; });
    out.push_back(t.done());
  }

  Tally mono("hardy-stein rhs nondecreasing in R", 0.0);
  mono.guarded(
      [&] {
        const Case& c = cases_.front();
        double prev = -1.0;
        for (double r : {0.25, 0.5, 0.75, 1.0}) {
          const double v = hardy_stein_rhs(c.u, c.p_exp, p, r);
          const double drop = std::max(0.0, prev - v);
          mono.add(drop, drop <= 1e-12 * std::abs(v), [&] { return "R=" + number(r) + " rhs " + number(v); });
          prev = v;
        }
      },
      [] { return std::string("rhs ladder"); });
  out.push_back(mono.done());
  return out;
}

std::vector<SuiteCheck> gradient_poisson_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 100);
  Rng rng(o.seed);
  Tally t("gradient of green vs poisson", 1e-4);
  Tally sym("gradient check under reflection", 1e-12);
  for (int i = 0; i < n; ++i) {
    const Vector x = rng.in_ball(p.d, 0.7);
    const Vector y = rng.on_sphere(p.d);
    t.guarded(
        [&] {
          const CheckResult r = green_poisson_gradient_check(p, x, y);
          t.add(r.residual, r.passed, [&] { return describe(x, y); });
          if (i % 10 == 0) {
            const CheckResult s = green_poisson_gradient_check(p, reflect(x), reflect(y));
            sym.add(relative_error(r.lhs, s.lhs), [&] { return describe(x, y); });
          }
        },
        [&] { return describe(x, y); });
  }
  Tally origin("gradient check at the origin", 1e-4);
  const Vector zero(static_cast<std::size_t>(p.d));
  for (int i = 0; i < 5; ++i) {
    const Vector y = rng.on_sphere(p.d);
    origin.guarded(
        [&] {
          const CheckResult r = green_poisson_gradient_check(p, zero, y);
          origin.add(std::max(r.residual, std::abs(r.rhs - 1.0)), [&] { return "y=" + describe(y); });
        },
        [&] { return "y=" + describe(y); });
  }
  return {t.done(), sym.done(), origin.done()};
}

std::vector<SuiteCheck> elementary_suite(const SuiteOptions& o) {
  std::vector<SuiteCheck> out;
  const double exponents[] = {0.3, 1.0, 1.5, 2.0, 5.0};
  for (double e : exponents) {
    Tally t("elementary band p=" + label(e), 0.0);
    const Band b = elementary_band(e);
    const bool ok = std::isfinite(b.upper) && b.lower > 0.0 && b.lower <= b.upper;
    t.add(0.0, ok, [] { return std::string(); });
    t.note("[" + number(b.lower) + ", " + number(b.upper) + "]");
    out.push_back(t.done());
  }

  Tally exact("elementary examples", 1e-14);
  exact.add(std::abs(elementary_ratio(2.0, 1.0, 2.0) - 1.5), [] { return std::string("p=2 a=1 b=2"); });
  Rng rng(o.seed);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.log_uniform(-6.0, 6.0);
    const double b = a * (1.0 + rng.log_uniform(-8.0, 12.0));
    exact.add(std::abs(elementary_ratio(1.0, a, b) - 1.0), [&] { return "p=1 a=" + number(a) + " b=" + number(b); });
  }
  out.push_back(exact.done());

  const int n = cases(o, 10000);
  Tally bound("elementary bound on random pairs", 0.0);
  for (int i = 0; i < n; ++i) {
    const double e = exponents[static_cast<std::size_t>(i) % std::size(exponents)];
    const double a = rng.log_uniform(-6.0, 6.0);
    const double b = a * (1.0 + rng.log_uniform(-8.0, 12.0));
    if (!(b > a)) continue;
    const ElementaryCheck c = elementary_bound_check(e, a, b);
    bound.add(0.0, c.passed, [&] {
      return "p=" + number(e) + " a=" + number(a) + " b=" + number(b) + " ratio " + number(c.ratio);
    });
  }
  out.push_back(bound.done());
  return out;
}

std::vector<SuiteCheck> remainder_suite(const SuiteOptions& o) {
  std::vector<SuiteCheck> out;
  const double exponents[] = {1.2, 1.5, 2.0, 3.0, 5.0};
  for (double e : exponents) {
    Tally t("remainder band p=" + label(e), 0.0);
    const Band b = remainder_band(e);
    const bool ok = std::isfinite(b.upper) && b.lower > 0.0 && b.lower <= b.upper;
    t.add(0.0, ok, [] { return std::string(); });
    t.note("[" + number(b.lower) + ", " + number(b.upper) + "]");
    out.push_back(t.done());
  }

  for (double e : {1.2, 1.5, 1.8}) {
    Tally t("regularized remainder bound p=" + label(e), 1.0 / (e - 1.0));
    const double m = remainder_eps_ratio_max(e);
    t.add(m, [&] { return "max F_eps/F " + number(m); });
    out.push_back(t.done());
  }

  Rng rng(o.seed);
  Tally examples("remainder examples", 1e-12);
  for (int i = 0; i < 200; ++i) {
    const double a = rng.sign() * rng.log_uniform(-3.0, 3.0);
    const double b = rng.sign() * rng.log_uniform(-3.0, 3.0);
    const double e = exponents[static_cast<std::size_t>(i) % std::size(exponents)];
    examples.add(relative_error(remainder_F({2.0, 0.0}, a, b), (b - a) * (b - a)),
                 [&] { return "p=2 a=" + number(a) + " b=" + number(b); });
    examples.add(relative_error(remainder_F({e, 0.0}, a, 0.0), (e - 1.0) * std::pow(std::abs(a), e)),
                 [&] { return "b=0 p=" + number(e) + " a=" + number(a); });
    examples.add(relative_error(remainder_F_eps({e, 0.0}, a, b), remainder_F({e, 0.0}, a, b)),
                 [&] { return "eps=0 p=" + number(e) + " a=" + number(a) + " b=" + number(b); });
  }
  out.push_back(examples.done());

  const int n = cases(o, 1000000);
  Tally f_pos("F nonnegative", 0.0);
  Tally feps_pos("F_eps nonnegative", 0.0);
  Tally ub("F_eps <= F/(p-1) for p=1.5", 0.0);
  for (int i = 0; i < n; ++i) {
    const double e = exponents[static_cast<std::size_t>(i) % std::size(exponents)];
    double a = rng.sign() * rng.log_uniform(-3.0, 3.0);
    double b = rng.sign() * rng.log_uniform(-3.0, 3.0);
    switch (i % 7) {
      case 0: b = 0.0; break;
      case 1: a = 0.0; break;
      case 2: b = a * (1.0 + rng.sign() * rng.log_uniform(-12.0, -1.0)); break;
      default: break;
    }
    const double eps = rng.log_uniform(-4.0, 1.0);
    const double f = remainder_F({e, 0.0}, a, b);
    const double fe = remainder_F_eps({e, eps}, a, b);
    auto what = [&] { return "p=" + number(e) + " a=" + number(a) + " b=" + number(b) + " eps=" + number(eps); };
    f_pos.add(std::max(0.0, -f), f >= 0.0, what);
    feps_pos.add(std::max(0.0, -fe), fe >= 0.0, what);
    if (i % 10 == 0) {
      const double g = remainder_F({1.5, 0.0}, a, b);
      const double ge = remainder_F_eps({1.5, eps}, a, b);
      const double excess = std::max(0.0, ge - 2.0 * g);
      ub.add(excess, excess <= 1e-12 * std::max(ge, std::numeric_limits<double>::min()), what);
    }
  }
  out.push_back(f_pos.done());
  out.push_back(feps_pos.done());
  out.push_back(ub.done());
  return out;
}

std::vector<SuiteCheck> pth_power_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 5);
  std::vector<ScalarField> fields;
  const std::size_t last = static_cast<std::size_t>(p.d - 1);
  for (const ScalarField& u : harmonic_catalog(p)) {
    if (u.label == "x1*x2" || u.label == "x1" || u.label == "P(.,z)" || u.label == "N(.,y0)") fields.push_back(u);
  }
  fields.push_back(field([last](const Vector& x) { return 2.0 + x[last]; }, "2+x_d"));

  Rng rng(o.seed);
  std::vector<Vector> points;
  const Vector y0 = catalog_pole(p.d);
  while (static_cast<int>(points.size()) < n) {
    const Vector x = rng.in_ball(p.d, 0.8);
    if (std::abs(x[0]) < 0.1 || !well_separated(x, y0, 0.1)) continue;
    points.push_back(x);
  }

  std::vector<SuiteCheck> out;
  for (double e : {2.0, 3.0}) {
    for (double eps : {0.0, 0.3}) {
      Tally t("pth power p=" + label(e) + " eps=" + label(eps), 0.0);
      double lo = std::numeric_limits<double>::infinity();
      double hi = 0.0;
      for (const ScalarField& u : fields) {
        for (const Vector& x : points) {
          t.guarded(
              [&] {
                const PthPowerReport r = pth_power_formula_check(u, {e, eps}, p, x);
                if (r.ratio > 0.0 && std::isfinite(r.ratio)) {
                  lo = std::min(lo, r.ratio);
                  hi = std::max(hi, r.ratio);
                }
                t.add(r.normalized_residual, r.passed, [&] {
                  return u.label + " x=" + describe(x) + " ratio " + number(r.ratio);
                });
              },
              [&] { return u.label + " x=" + describe(x); });
        }
      }
      if (hi > 0.0) t.note("h-halving ratios in [" + number(lo) + ", " + number(hi) + "]");
      out.push_back(t.done());
    }
  }
  return out;
}

std::vector<SuiteCheck> dyson_suite(const SuiteOptions& o) {
  const Params p = make_params(2, 1.0);
  const int n = cases(o, 100);
  constexpr double tol = 1e-9;
  Rng rng(o.seed);
  const std::pair<KernelKind, KernelKind> kinds[] = {{KernelKind::NewtonDyson, KernelKind::NewtonW},
                                                     {KernelKind::GreenDyson, KernelKind::GreenW},
                                                     {KernelKind::PoissonDyson, KernelKind::PoissonW}};
  std::vector<Tally> tallies;
  for (const auto& kk : kinds) tallies.emplace_back(std::string(to_string(kk.first)) + " vs weighted W kernel", tol);

  auto chamber = [&](const Vector& v) {
    Vector w = v;
    w[0] = std::abs(w[0]);
    return w;
  };
  for (int i = 0; i < n;) {
    const Vector xa = chamber(rng.in_ball(2));
    const Vector ya = chamber(rng.in_ball(2));
    if (xa[0] < 0.02 || ya[0] < 0.02 || !well_separated(xa, ya, 1e-3)) continue;
    ++i;
    const Vector za = (1.0 / norm(ya)) * ya;
    for (std::size_t j = 0; j < std::size(kinds); ++j) {
      const bool sphere = base_kind(kinds[j].first) == KernelKind::Poisson;
      const Vector& ta = sphere ? za : ya;
      const Vector x = to_a1_basis(xa);
      const Vector y = to_a1_basis(ta);
      tallies[j].guarded(
          [&] {
            const double a = dyson(kinds[j].first, x, y).value();
            const double b = weight(p, ta) * w_invariant(kinds[j].second, p, xa, ta, o.tol).value();
            tallies[j].add(relative_error(a, b), [&] { return "z: " + describe(x, y); });
          },
          [&] { return "z: " + describe(x, y); });
    }
  }
  std::vector<SuiteCheck> out;
  for (const Tally& t : tallies) out.push_back(t.done());

  Tally wall("dyson poisson vanishes on the wall", 0.0);
  for (int i = 0; i < 20; ++i) {
    const Vector xa = chamber(rng.in_ball(2, 0.95));
    if (xa[0] <= 0.0) continue;
    const double s = i % 2 ? 1.0 : -1.0;
    const Vector y = to_a1_basis(Vector{0.0, s});
    const Vector x = to_a1_basis(xa);
    wall.guarded(
        [&] {
          const double v = dyson(KernelKind::PoissonDyson, x, y).value();
          wall.add(std::abs(v), [&] { return "z: " + describe(x, y); });
        },
        [&] { return "z: " + describe(x, y); });
  }
  out.push_back(wall.done());
  return out;
}

std::vector<SuiteCheck> poisson_newton_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 100);
  const int boundary_every = p.d <= 2 ? 3 : 20;
  Rng rng(o.seed);
  Tally inner("poisson of newton, pole inside", 1e-6);
  Tally outer("poisson of newton, pole outside", 1e-6);
  Tally edge("poisson of newton, pole on the sphere", 1e-5);
  for (int i = 0; i < n; ++i) {
    const Vector x = rng.in_ball(p.d, 0.7);
    Vector y;
    Tally* t = nullptr;
    if (i % boundary_every == boundary_every - 1) {
      y = rng.on_sphere(p.d);
      t = &edge;
    } else if (i % 2 == 0) {
      y = rng.in_ball(p.d, 0.95);
      if (!well_separated(x, y, 1e-3)) y = (0.5 / std::max(norm(y), 1e-3)) * reflect(x);
      t = &inner;
    } else {
      y = rng.uniform(1.1, 3.0) * rng.on_sphere(p.d);
      t = &outer;
    }
    t->guarded(
        [&] {
          const CheckResult r = poisson_newton_check(p, x, y, o.tol);
          t->add(r.residual, r.passed, [&] { return describe(x, y); });
        },
        [&] { return describe(x, y); });
  }
  return {inner.done(), outer.done(), edge.done()};
}

std::vector<SuiteCheck> green_properties_suite(const Params& p, const SuiteOptions& o) {
  const int n = cases(o, 10000);
  Rng rng(o.seed);
  Tally pos("green positive inside", 0.0);
  for (int i = 0; i < n;) {
    const Vector x = rng.in_ball(p.d, 0.999);
    const Vector y = rng.in_ball(p.d, 0.999);
    if (!well_separated(x, y, 1e-6)) continue;
    ++i;
    pos.guarded(
        [&] {
          const double g = green_direct(p, x, y, o.tol).value();
          pos.add(g > 0.0 ? 0.0 : -g, g > 0.0, [&] { return describe(x, y) + " G=" + number(g); });
        },
        [&] { return describe(x, y); });
  }

  const int m = std::max(1, n / 10);
  Tally edge("green vanishes on the sphere", 1e-8);
  Tally sym("green symmetric", 1e-8);
  Tally inv("green reflection invariant", 1e-8);
  for (int i = 0; i < m; ++i) {
    const Vector x = rng.on_sphere(p.d);
    const Vector y = rng.in_ball(p.d, 0.99);
    edge.guarded(
        [&] {
          const double a = green_direct(p, x, y, o.tol).value();
          const double b = green_direct(p, y, x, o.tol).value();
          edge.add(std::max(std::abs(a), std::abs(b)), [&] { return describe(x, y); });
        },
        [&] { return describe(x, y); });
  }
  for (int i = 0; i < m;) {
    const Vector x = rng.in_ball(p.d);
    const Vector y = rng.in_ball(p.d);
    if (!well_separated(x, y, 1e-6)) continue;
    ++i;
    sym.guarded(
        [&] {
          const double g = green_direct(p, x, y, o.tol).value();
          sym.add(relative_error(g, green_direct(p, y, x, o.tol).value()), [&] { return describe(x, y); });
          inv.add(relative_error(g, green_direct(p, reflect(x), reflect(y), o.tol).value()),
                  [&] { return describe(x, y); });
        },
        [&] { return describe(x, y); });
  }
  return {pos.done(), edge.done(), sym.done(), inv.done()};
}

std::vector<SuiteCheck> normalizations_suite(const Params& p, const SuiteOptions& o) {
  std::vector<SuiteCheck> out;
  Tally jac("jacobi weights sum to 1/c_k", 1e-12);
  for (int nodes : {4, 16, 64}) {
    const double s = jacobi_rule(p.k, nodes).weight_sum();
    jac.add(std::abs(s * p.c_k - 1.0), [&] { return std::to_string(nodes) + " nodes: " + number(s); });
  }
  out.push_back(jac.done());

  Tally sph("sphere weights sum to d_k", 1e-10);
  for (int degree : {4, 16, 40}) {
    const double s = sphere_rule(p, degree).weight_sum();
    sph.add(std::abs(s / p.d_k - 1.0), [&] { return "degree " + std::to_string(degree) + ": " + number(s); });
  }
  out.push_back(sph.done());

  Rng rng(o.seed);
  const BoundaryFunction one{[](const Vector&) { return 1.0; }, "1"};
  // Product sphere rules grow like degree^(d-1); past d = 3 the radius is kept where they fit.
  const double radius = p.d <= 3 ? 0.9 : (p.d == 4 ? 0.7 : 0.5);
  Tally unit("poisson integral of 1", 1e-8);
  unit.note("|x| <= " + number(radius));
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.in_ball(p.d, radius);
    unit.guarded([&] { unit.add(std::abs(poisson_integral(one, p, x) - 1.0), [&] { return "x=" + describe(x); }); },
                 [&] { return "x=" + describe(x); });
  }
  out.push_back(unit.done());

  Tally origin("poisson kernel at the origin", 1e-10);
  const Vector zero(static_cast<std::size_t>(p.d));
  for (int i = 0; i < 100; ++i) {
    const Vector y = rng.on_sphere(p.d);
    origin.guarded([&] { origin.add(std::abs(poisson(p, zero, y, o.tol) - 1.0), [&] { return "y=" + describe(y); }); },
                   [&] { return "y=" + describe(y); });
  }
  out.push_back(origin.done());

  const Params planar = make_params(2, 1.0);
  Tally pre("c_k C_k at d=2 k=1 equals 1/(4 pi)", 1e-14);
  pre.add(relative_error(planar.newton_prefactor(), 1.0 / (4.0 * std::numbers::pi)),
          [&] { return number(planar.newton_prefactor()); });
  out.push_back(pre.done());
  return out;
}

struct SuiteName {
  Suite suite;
  std::string_view name;
};

constexpr SuiteName kNames[] = {
    {Suite::Harmonicity, "harmonicity"},
    {Suite::ClosedForms, "closed-forms"},
    {Suite::GreenPaths, "green-paths"},
    {Suite::PoissonJensen, "poisson-jensen"},
    {Suite::HardyStein, "hardy-stein"},
    {Suite::GradientPoisson, "gradient-poisson"},
    {Suite::Elementary, "elementary"},
    {Suite::Remainder, "remainder"},
    {Suite::PthPower, "pth-power"},
    {Suite::Dyson, "dyson"},
    {Suite::PoissonNewton, "poisson-newton"},
    {Suite::GreenProperties, "green-properties"},
    {Suite::Normalizations, "normalizations"},
};

constexpr SuiteName kAliases[] = {
    {Suite::Elementary, "lemma-3.3"},
    {Suite::Remainder, "lemma-4.4"},
    {Suite::PthPower, "lemma-4.5"},
};

nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

bool SuiteReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed(); });
}

const SuiteCheck* SuiteReport::first_failure() const {
  for (const SuiteCheck& c : checks) {
    if (!c.passed()) return &c;
  }
  return nullptr;
}

std::string_view to_string(Suite s) {
  for (const SuiteName& n : kNames) {
    if (n.suite == s) return n.name;
  }
  return "unknown";
}

Suite parse_suite(std::string_view name) {
  for (const SuiteName& n : kNames) {
    if (n.name == name) return n.suite;
  }
  for (const SuiteName& n : kAliases) {
    if (n.name == name) return n.suite;
  }
  throw InvalidParams("unknown suite '" + std::string(name) + "'");
}

std::vector<Suite> all_suites() {
  std::vector<Suite> out;
  for (const SuiteName& n : kNames) out.push_back(n.suite);
  return out;
}

SuiteReport run_suite(Suite s, const Params& p, const SuiteOptions& opts) {
  if (opts.n < 0) throw InvalidParams("case count must be nonnegative");
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  r.suite = std::string(to_string(s));
  r.d = p.d;
  r.k = p.k;
  r.seed = opts.seed;
  switch (s) {
    case Suite::Harmonicity: r.checks = harmonicity_suite(p, opts); break;
    case Suite::ClosedForms:
      r.d = 2;
      r.k = 1.0;
      r.checks = closed_forms_suite(opts);
      break;
    case Suite::GreenPaths: r.checks = green_paths_suite(p, opts); break;
    case Suite::PoissonJensen: r.checks = poisson_jensen_suite(p, opts); break;
    case Suite::HardyStein: r.checks = hardy_stein_suite(p); break;
    case Suite::GradientPoisson: r.checks = gradient_poisson_suite(p, opts); break;
    case Suite::Elementary: r.checks = elementary_suite(opts); break;
    case Suite::Remainder: r.checks = remainder_suite(opts); break;
    case Suite::PthPower: r.checks = pth_power_suite(p, opts); break;
    case Suite::Dyson:
      r.d = 2;
      r.k = 1.0;
      r.checks = dyson_suite(opts);
      break;
    case Suite::PoissonNewton: r.checks = poisson_newton_suite(p, opts); break;
    case Suite::GreenProperties: r.checks = green_properties_suite(p, opts); break;
    case Suite::Normalizations: r.checks = normalizations_suite(p, opts); break;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_json(const SuiteReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["d"] = r.d;
  j["k"] = r.k;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const SuiteCheck& c : r.checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["passed"] = c.passed();
    e["informational"] = c.informational;
    e["count"] = c.count;
    e["failures"] = c.failures;
    e["max_residual"] = number_json(c.max_residual);
    e["tolerance"] = number_json(c.tolerance);
    e["worst"] = c.worst;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j.dump(2);
}

}  // namespace dunkl
