#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dunkl/core.hpp"

namespace dunkl {

enum class Parity { None, EvenInX1 };

/// A real function on part of R^d. `region` says where `eval` is smooth; evaluators must
/// be safe to call concurrently.
struct ScalarField {
  std::function<double(const Vector&)> eval;
  std::string label;
  std::function<bool(const Vector&)> region;
  Parity parity = Parity::None;

  double operator()(const Vector& x) const { return eval(x); }
  bool contains(const Vector& x) const { return !region || region(x); }
};

/// The three pieces of Delta u + (2k/x_1) d_1 u - (k/x_1^2)(u - u o sigma).
struct LaplacianTerms {
  double laplacian = 0.0;
  double gradient = 0.0;
  double reflection = 0.0;

  double value() const noexcept { return laplacian + gradient + reflection; }
};

/// Default finite-difference step 1e-4 (1 + |x|).
double default_step(const Vector& x);

/// Rank-one Dunkl Laplacian by second-order central differences with the reflection
/// difference taken exactly. Within 10h of the wall only fields even in x_1 are accepted,
/// and for |x_1| < h the first-order term is replaced by its limit 2k d_11 u.
double dunkl_laplacian(const ScalarField& u, const Params& p, const Vector& x, double h);

LaplacianTerms dunkl_laplacian_terms(const ScalarField& u, const Params& p, const Vector& x, double h);

/// Central-difference gradient.
Vector gradient(const ScalarField& u, const Vector& x, double h);

/// x -> |x|^{2-2k-d} u(x / |x|^2).
ScalarField kelvin(const ScalarField& u, const Params& p);

/// Fixed interior pole used by the kernel entries of the catalog: (0.3, 0.2, 0, ...).
Vector catalog_pole(int d);
/// Fixed boundary point used by the Poisson entry: (0.6, 0.8, 0, ...) in d >= 2, (1) in d = 1.
Vector catalog_boundary_point(int d);

/// Seven Delta_k-harmonic fields: 1, x_2, x_1 x_2, x_1^2 - (1+2k) x_2^2, N_k(., y0),
/// P_k(., z), G_k(., y0). In d = 1, where only the first entry survives, the polynomial
/// slots hold x_1, |x|^{1-2k} and its product with x_1 / |x|^2. Kernel entries exclude a
/// 0.05 neighbourhood of W.y0 from their regions and evaluate with tolerance `tol`.
std::vector<ScalarField> harmonic_catalog(const Params& p, double tol = 1e-13);

struct HarmonicityReport {
  std::string label;
  bool passed = true;
  int points = 0;
  int failures = 0;
  double max_residual = 0.0;
  double max_normalized_residual = 0.0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  Vector worst_point;
};

/// Evaluates Delta_k u at every sample with steps h and h/2. A point passes when the
/// residual is at roundoff level relative to the size of the operator's terms plus
/// |u| / h^2 (normalized residual <= 1e-9) or when halving h divides it by a factor in [3.5, 4.5].
HarmonicityReport verify_harmonicity(const ScalarField& u, const Params& p, const std::vector<Vector>& sample,
                                     double h);

/// Deterministic sample of n points in the box [-extent, extent]^d where the whole
/// stencil of step h (and the reflected point) lies in u's region, keeping |x_1| > 10h
/// unless u is even in x_1.
std::vector<Vector> harmonicity_sample(const ScalarField& u, int d, int n, std::uint64_t seed, double h,
                                       double extent = 1.0);

}  // namespace dunkl
