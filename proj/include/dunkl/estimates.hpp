#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dunkl/core.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

/// max(1, log(max(s, 1))): the clamped logarithm used by every envelope.
double log_guard(double s);

/// Two-sided envelope of the Newton kernel on R^d x R^d, one formula per dimension case.
double newton_envelope(const Params& p, const Vector& x, const Vector& y);

/// Two-sided envelope of the Green function on B x B.
double green_envelope(const Params& p, const Vector& x, const Vector& y);

/// c_k int xi / ((xi + A) A^{k+d/2-1}) (1-t)^{k-1}(1+t)^k dt with xi = delta(x) delta(y):
/// the general integral comparison for the Green function, evaluated in rank one.
double green_envelope_general(const Params& p, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// Two-sided envelope of the Poisson kernel on B x S. In d = 1 this is (1 - |x|) / |x - y|.
double poisson_envelope(const Params& p, const Vector& x, const Vector& y);

/// delta(x) N_k(x, y0): boundary decay profile of G_k(., y0).
double boundary_decay_envelope(const Params& p, const Vector& x, const Vector& y0, double tol = kDefaultTol);

/// The point y0 = (0.2, 0.1, 0, ...) used for the boundary decay comparison.
Vector boundary_decay_pole(int d);

/// (1/a^p - 1/b^p) b a^p / (b - a) for 0 < a < b, evaluated without cancellation.
double elementary_ratio(double p_exp, double a, double b);

struct Band {
  double lower = 0.0;
  double upper = 0.0;
};

/// Extremes of elementary_ratio over a log grid of a in [1e-6, 1e6] and gaps b/a from
/// 1 + 1e-8 to 1e12.
Band elementary_band(double p_exp);

struct ElementaryCheck {
  double ratio = 0.0;
  double constant = 0.0;
  bool passed = false;
};

/// Checks ratio in [1/C, C] with C taken from the sweep (1% margin).
ElementaryCheck elementary_bound_check(double p_exp, double a, double b);

enum class Theorem { Newton, Green, GreenIntegral, Poisson, BoundaryDecay, DimensionOne };

std::string_view to_string(Theorem t);
/// Accepts the names produced by to_string and the short selector aliases.
Theorem parse_theorem(std::string_view name);

struct ScanReport {
  std::string theorem;
  int d = 0;
  double k = 0.0;
  int n_samples = 0;
  std::uint64_t seed = 0;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  Vector argmin_x;
  Vector argmin_y;
  Vector argmax_x;
  Vector argmax_y;

  double spread() const { return ratio_max / ratio_min; }
  bool finite() const;
};

std::string scan_csv_header();
std::string to_csv_row(const ScanReport& r);
std::vector<ScanReport> read_scan_reports(const std::string& path);

/// Where scan pairs are drawn from.
enum class ScanDomain { BallPairs, BallSphere, FixedPole, Line };

struct ScanConfig {
  int n = 10000;
  std::uint64_t seed = 1;
  ScanDomain domain = ScanDomain::BallPairs;
  Vector pole;  // used by FixedPole
};

using PairFunction = std::function<double(const Vector&, const Vector&)>;

/// Samples n pairs in five equal strata (bulk, near the sphere, near the wall, near the
/// diagonal, near the reflected diagonal), skips pairs within 1e-6 of the orbit W.y, and
/// records the extremes of kernel / envelope. Deterministic for a fixed seed.
ScanReport ratio_scan(const PairFunction& kernel, const PairFunction& envelope, const Params& p,
                      const ScanConfig& cfg, std::string theorem = "custom");

/// Runs the scan for one of the stated comparisons.
ScanReport scan_theorem(Theorem t, const Params& p, int n, std::uint64_t seed, double tol = kDefaultTol);

struct BaselineCheck {
  bool found = false;
  bool within = false;
  double baseline_min = 0.0;
  double baseline_max = 0.0;
};

/// Compares a report to the baseline with the same theorem, d, k, n and seed: the
/// report passes when neither end of its band moves outward by more than `slack`.
BaselineCheck compare_to_baseline(const ScanReport& r, const std::vector<ScanReport>& baselines,
                                  double slack = 1.1);

}  // namespace dunkl
