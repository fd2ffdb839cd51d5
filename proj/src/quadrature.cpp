#include "dunkl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <queue>
#include <tuple>

namespace dunkl {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

int points_for_degree(int degree) { return std::max(1, degree / 2 + 1); }

/// Eigenvalues of the symmetric tridiagonal matrix (diag, off) and the first
/// components of the normalized eigenvectors, sorted by eigenvalue.
void tridiagonal_first_components(std::vector<double>& diag, std::vector<double> off,
                                  std::vector<double>& first) {
  const std::size_t n = diag.size();
  off.resize(n, 0.0);
  off[n - 1] = 0.0;
  first.assign(n, 0.0);
  first[0] = 1.0;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iterations = 0;
    while (true) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        if (std::abs(off[m]) <= eps * (std::abs(diag[m]) + std::abs(diag[m + 1]))) break;
      }
      if (m == l) break;
      if (++iterations > 60) throw SlowConvergence("tridiagonal eigenvalue iteration did not converge");

      double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * off[i];
        const double b = c * off[i];
        r = std::hypot(f, g);
        off[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          off[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = first[i + 1];
        first[i + 1] = s * first[i] + c * f;
        first[i] = c * first[i] - s * f;
      }
      if (underflow) continue;
      diag[l] -= p;
      off[l] = g;
      off[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  std::vector<double> d2(n), f2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = diag[order[i]];
    f2[i] = first[order[i]];
  }
  diag = std::move(d2);
  first = std::move(f2);
}

/// One-dimensional Gauss rule with 1 - t and 1 + t stored alongside the nodes.
struct LineRule {
  std::vector<double> t;
  std::vector<double> one_minus;
  std::vector<double> one_plus;
  std::vector<double> w;
};

const LineRule& cached_line_rule(int n, double a, double b) {
  thread_local std::map<std::tuple<int, double, double>, LineRule> cache;
  const auto key = std::make_tuple(n, a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const QuadratureRule q = gauss_jacobi(n, a, b);
  LineRule r;
  r.t = q.nodes;
  r.w = q.weights;
  for (double t : r.t) {
    r.one_minus.push_back(1.0 - t);
    r.one_plus.push_back(1.0 + t);
  }
  return cache.emplace(key, std::move(r)).first->second;
}

constexpr int kLowOrder = 10;
constexpr int kHighOrder = 20;

/// A panel of one half of [-1, 1], stored as an interval [lo, hi] of the distance to the
/// nearer endpoint (1 - t on the right half, 1 + t on the left), so panels can be graded
/// toward an endpoint far below the spacing of doubles near +-1.
struct Panel {
  bool right;
  double lo;
  double hi;
  double value;
  double error;
  double magnitude;
  int depth;
};

struct PanelByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

class JacobiPanelEvaluator {
 public:
  JacobiPanelEvaluator(const JacobiIntegrand& f, double k)
      : f_(f),
        k_(k),
        interior_lo_(cached_line_rule(kLowOrder, 0.0, 0.0)),
        interior_hi_(cached_line_rule(kHighOrder, 0.0, 0.0)),
        right_lo_(cached_line_rule(kLowOrder, k - 1.0, 0.0)),
        right_hi_(cached_line_rule(kHighOrder, k - 1.0, 0.0)),
        left_lo_(cached_line_rule(kLowOrder, 0.0, k)),
        left_hi_(cached_line_rule(kHighOrder, 0.0, k)) {}

  Panel evaluate(bool right, double lo, double hi, int depth) {
    double coarse = 0.0;
    double fine = 0.0;
    double mag = 0.0;
    if (lo == 0.0) {
      // End panel: the Jacobi rule absorbs the endpoint factor of the weight.
      const double scale = std::pow(0.5 * hi, right ? k_ : k_ + 1.0);
      const LineRule& rlo = right ? right_lo_ : left_lo_;
      const LineRule& rhi = right ? right_hi_ : left_hi_;
      coarse = scale * end_sum(rlo, right, hi, nullptr);
      fine = scale * end_sum(rhi, right, hi, &mag);
      mag *= scale;
    } else {
      const double half = 0.5 * (hi - lo);
      coarse = half * interior_sum(interior_lo_, right, lo, hi, nullptr);
      fine = half * interior_sum(interior_hi_, right, lo, hi, &mag);
      mag *= half;
    }
    return Panel{right, lo, hi, fine, std::abs(fine - coarse), mag, depth};
  }

  int evaluations() const noexcept { return evaluations_; }

 private:
  double call(double t, double om, double op) {
    ++evaluations_;
    const double v = f_(IntervalPoint{t, om, op});
    if (!std::isfinite(v)) throw NonFinite("integrand is not finite at t = " + std::to_string(t));
    return v;
  }

  /// Calls f at distance `near` from the endpoint on the given side.
  double call_at(bool right, double near, double far) {
    return right ? call(1.0 - near, near, far) : call(near - 1.0, far, near);
  }

  double end_sum(const LineRule& r, bool right, double h, double* mag) {
    double s = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      const double near = 0.5 * h * (right ? r.one_minus[i] : r.one_plus[i]);
      const double far = 2.0 - near;
      const double rest = right ? std::pow(far, k_) : std::pow(far, k_ - 1.0);
      const double term = r.w[i] * call_at(right, near, far) * rest;
      s += term;
      m += std::abs(term);
    }
    if (mag) *mag = m;
    return s;
  }

  double interior_sum(const LineRule& r, bool right, double lo, double hi, double* mag) {
    const double half = 0.5 * (hi - lo);
    double s = 0.0;
    double m = 0.0;
    for (std::size_t i = 0; i < r.t.size(); ++i) {
      const double near = lo + half * r.one_plus[i];
      const double far = 2.0 - near;
      const double w = right ? std::pow(near, k_ - 1.0) * std::pow(far, k_) : std::pow(far, k_ - 1.0) * std::pow(near, k_);
      const double term = r.w[i] * call_at(right, near, far) * w;
      s += term;
      m += std::abs(term);
    }
    if (mag) *mag = m;
    return s;
  }

  const JacobiIntegrand& f_;
  double k_;
  const LineRule& interior_lo_;
  const LineRule& interior_hi_;
  const LineRule& right_lo_;
  const LineRule& right_hi_;
  const LineRule& left_lo_;
  const LineRule& left_hi_;
  int evaluations_ = 0;
};

/// Breakpoints 2^{-m} (as distances to the endpoint) down to about `scale`.
std::vector<double> graded_breakpoints(double scale) {
  std::vector<double> pts = {0.0, 1.0};
  if (!(scale > 0.0) || !(scale < 0.5)) return pts;
  double w = 1.0;
  while (w > 0.5 * scale && w > 1e-300) {
    w *= 0.5;
    pts.push_back(w);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

}  // namespace

double QuadratureRule::weight_sum() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

Recurrence jacobi_recurrence(double a, double b, int n) {
  if (n < 1) throw InvalidParams("recurrence length must be positive");
  if (!(a > -1.0) || !(b > -1.0)) throw InvalidParams("Jacobi exponents must exceed -1");
  Recurrence rec;
  rec.alpha.resize(n);
  rec.beta.resize(n);
  const double ab = a + b;
  rec.alpha[0] = (b - a) / (ab + 2.0);
  rec.beta[0] = std::exp((ab + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));
  for (int i = 1; i < n; ++i) {
    const double two_n = 2.0 * i + ab;
    rec.alpha[i] = (b * b - a * a) / (two_n * (two_n + 2.0));
    if (i == 1) {
      rec.beta[i] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      rec.beta[i] = 4.0 * i * (i + a) * (i + b) * (i + ab) /
                    (two_n * two_n * (two_n + 1.0) * (two_n - 1.0));
    }
  }
  return rec;
}

Recurrence generalized_gegenbauer_recurrence(double mu, double lambda, int n) {
  if (n < 1) throw InvalidParams("recurrence length must be positive");
  if (!(mu > -0.5) || !(lambda > -1.0)) throw InvalidParams("weight exponents out of range");
  const double al = lambda;
  const double be = mu - 0.5;
  Recurrence rec;
  rec.alpha.assign(n, 0.0);
  rec.beta.resize(n);
  rec.beta[0] = std::exp(log_beta(mu + 0.5, lambda + 1.0));
  for (int i = 1; i < n; ++i) {
    const int m = i / 2;
    if (i % 2 == 0) {
      rec.beta[i] = m * (m + al) / ((2.0 * m + al + be) * (2.0 * m + al + be + 1.0));
    } else {
      rec.beta[i] = (m + be + 1.0) * (m + al + be + 1.0) /
                    ((2.0 * m + al + be + 1.0) * (2.0 * m + al + be + 2.0));
    }
  }
  return rec;
}

QuadratureRule gauss_from_recurrence(const Recurrence& rec) {
  const std::size_t n = rec.alpha.size();
  std::vector<double> diag = rec.alpha;
  std::vector<double> off(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) off[i] = std::sqrt(rec.beta[i + 1]);
  std::vector<double> first;
  tridiagonal_first_components(diag, off, first);

  QuadratureRule q;
  q.domain = Domain::Interval;
  q.dim = 1;
  q.order = static_cast<int>(2 * n - 1);
  q.nodes = std::move(diag);
  q.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) q.weights[i] = rec.beta[0] * first[i] * first[i];
  return q;
}

QuadratureRule gauss_jacobi(int n, double a, double b) { return gauss_from_recurrence(jacobi_recurrence(a, b, n)); }

QuadratureRule jacobi_rule(double k, int n) { return gauss_jacobi(n, k - 1.0, k); }

QuadratureRule plain_sphere_rule(int d, int degree) {
  if (d < 1) throw InvalidParams("dimension must be at least 1");
  QuadratureRule q;
  q.domain = Domain::Sphere;
  q.dim = d;
  q.order = degree;
  if (d == 1) {
    q.nodes = {-1.0, 1.0};
    q.weights = {1.0, 1.0};
    q.order = std::numeric_limits<int>::max();
    return q;
  }
  if (d == 2) {
    const int m = std::max(degree, 0) + 1;
    for (int j = 0; j < m; ++j) {
      const double theta = 2.0 * std::numbers::pi * (j + 0.5) / m;
      q.nodes.push_back(std::cos(theta));
      q.nodes.push_back(std::sin(theta));
      q.weights.push_back(2.0 * std::numbers::pi / m);
    }
    return q;
  }
  const double a = 0.5 * (d - 3);
  const QuadratureRule u = gauss_jacobi(points_for_degree(degree), a, a);
  const QuadratureRule sub = plain_sphere_rule(d - 1, degree);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ui = u.nodes[i];
    const double s = std::sqrt(std::max(0.0, (1.0 - ui) * (1.0 + ui)));
    for (std::size_t j = 0; j < sub.size(); ++j) {
      q.nodes.push_back(ui);
      for (double c : sub.node(j)) q.nodes.push_back(s * c);
      q.weights.push_back(u.weights[i] * sub.weights[j]);
    }
  }
  return q;
}

QuadratureRule sphere_rule(const Params& p, int degree) {
  QuadratureRule q;
  q.domain = Domain::Sphere;
  q.dim = p.d;
  q.order = degree;
  if (p.d == 1) {
    q.nodes = {-1.0, 1.0};
    q.weights = {1.0, 1.0};
    q.order = std::numeric_limits<int>::max();
    return q;
  }
  int npts = points_for_degree(degree);
  if (npts % 2 == 1) ++npts;
  const QuadratureRule u =
      gauss_from_recurrence(generalized_gegenbauer_recurrence(p.k, 0.5 * (p.d - 3), npts));
  const QuadratureRule sub = plain_sphere_rule(p.d - 1, degree);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ui = u.nodes[i];
    const double s = std::sqrt(std::max(0.0, (1.0 - ui) * (1.0 + ui)));
    for (std::size_t j = 0; j < sub.size(); ++j) {
      q.nodes.push_back(ui);
      for (double c : sub.node(j)) q.nodes.push_back(s * c);
      q.weights.push_back(u.weights[i] * sub.weights[j]);
    }
  }
  return q;
}

namespace {

/// Gauss rule on [0, 1] for the weight r^c: nodes r_i, weights w_i.
QuadratureRule radial_rule(double c, int npts) {
  QuadratureRule t = gauss_jacobi(npts, 0.0, c);
  const double scale = std::pow(2.0, -c - 1.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t.nodes[i] = 0.5 * (1.0 + t.nodes[i]);
    t.weights[i] *= scale;
  }
  return t;
}

}  // namespace

QuadratureRule ball_rule(const Params& p, int degree) {
  const QuadratureRule r = radial_rule(p.d - 1.0 + 2.0 * p.k, points_for_degree(degree));
  const QuadratureRule s = sphere_rule(p, degree);
  QuadratureRule q;
  q.domain = Domain::Ball;
  q.dim = p.d;
  q.order = degree;
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (double c : s.node(j)) q.nodes.push_back(r.nodes[i] * c);
      q.weights.push_back(r.weights[i] * s.weights[j]);
    }
  }
  return q;
}

IntegrationResult integrate_jacobi(const JacobiIntegrand& f, double k, const JacobiOptions& opts) {
  if (!(k > 0.0)) throw InvalidParams("multiplicity k must be positive");
  JacobiPanelEvaluator eval(f, k);

  std::priority_queue<Panel, std::vector<Panel>, PanelByError> heap;
  double total = 0.0;
  double total_err = 0.0;
  double total_mag = 0.0;
  double frozen_err = 0.0;
  for (bool right : {true, false}) {
    const std::vector<double> pts = graded_breakpoints(right ? opts.right_scale : opts.left_scale);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      Panel p = eval.evaluate(right, pts[i], pts[i + 1], 0);
      total += p.value;
      total_err += p.error;
      total_mag += p.magnitude;
      heap.push(p);
    }
  }
  int panels = static_cast<int>(heap.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();

  auto target = [&]() { return std::max({opts.tol * std::abs(total), opts.abs_tol, 50.0 * eps * total_mag}); };

  while (total_err + frozen_err > target()) {
    if (heap.empty()) break;
    if (panels >= opts.max_panels) throw ToleranceNotReached(total, total_err + frozen_err);
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (worst.depth > 60 || !(mid > worst.lo) || !(mid < worst.hi)) {
      frozen_err += worst.error;
      total_err -= worst.error;
      continue;
    }
    Panel left = eval.evaluate(worst.right, worst.lo, mid, worst.depth + 1);
    Panel right = eval.evaluate(worst.right, mid, worst.hi, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    total_mag += left.magnitude + right.magnitude - worst.magnitude;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  if (total_err + frozen_err > target()) throw ToleranceNotReached(total, total_err + frozen_err);

  // Re-sum from scratch to shed accumulated update roundoff.
  double sum = 0.0;
  double err = frozen_err;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return IntegrationResult{sum, err, panels, eval.evaluations()};
}

double integrate_jacobi(const std::function<double(double)>& f, double k, double tol) {
  JacobiOptions opts;
  opts.tol = tol;
  return integrate_jacobi([&](const IntervalPoint& p) { return f(p.t); }, k, opts).value;
}

double apply_rule(const QuadratureRule& rule, const std::function<double(const Vector&)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(rule.point(i));
  return s;
}

double ball_integrate(const std::function<double(const Vector&)>& f, const Params& p, int degree) {
  return apply_rule(ball_rule(p, degree), f);
}

double ball_integrate_newtonian(const std::function<double(const Vector&)>& g, const Params& p,
                                int degree) {
  return ball_integrate_newtonian(g, p, degree, 1.0);
}

double ball_integrate_newtonian(const std::function<double(const Vector&)>& g, const Params& p,
                                int degree, double radius) {
  if (!(radius > 0.0)) throw InvalidParams("radius must be positive");
  const int npts = points_for_degree(degree + 1);
  const QuadratureRule near_origin = radial_rule(1.0, npts);
  const QuadratureRule far = radial_rule(p.d - 1.0 + 2.0 * p.k, npts);
  const QuadratureRule s = sphere_rule(p, degree);
  auto shell = [&](double r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      Vector y(s.node(j));
      y *= r * radius;
      acc += s.weights[j] * g(y);
    }
    return acc;
  };
  double total = 0.0;
  for (std::size_t i = 0; i < near_origin.size(); ++i) total += near_origin.weights[i] * shell(near_origin.nodes[i]);
  for (std::size_t i = 0; i < far.size(); ++i) total -= far.weights[i] * shell(far.nodes[i]);
  return radius * radius * total;
}

}  // namespace dunkl
