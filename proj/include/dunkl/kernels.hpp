#pragma once

#include <string>
#include <string_view>

#include "dunkl/core.hpp"
#include "dunkl/quadrature.hpp"

namespace dunkl {

enum class KernelKind {
  Newton,
  Green,
  Poisson,
  NewtonW,
  GreenW,
  PoissonW,
  NewtonDyson,
  GreenDyson,
  PoissonDyson
};

std::string_view to_string(KernelKind kind);
/// Accepts "newton", "green", "poisson", their "-w" and "-dyson" variants.
KernelKind parse_kernel_kind(std::string_view name);
/// The base kind underlying a W-invariant or Dyson kind.
KernelKind base_kind(KernelKind kind);

/// Squared distances to y and sigma y, and the product x_1 y_1, for one pair.
struct PairGeometry {
  double dist2 = 0.0;
  double reflected_dist2 = 0.0;
  double eta = 0.0;

  static PairGeometry of(const Vector& x, const Vector& y);

  /// |x|^2 + |y|^2 - 2(t x_1 y_1 + x'.y'), written about whichever endpoint of
  /// [-1, 1] makes it small, so no cancellation occurs near the orbit.
  double norm_id(const IntervalPoint& p) const {
    return eta >= 0.0 ? dist2 + 2.0 * eta * p.one_minus_t : reflected_dist2 - 2.0 * eta * p.one_plus_t;
  }

  /// Integration options grading panels toward the endpoint where norm_id peaks.
  JacobiOptions options(double tol) const;
};

/// Newton kernel c_k C_k int (|x|^2+|y|^2-2<x,z_t>)^{1-k-d/2} (1-t)^{k-1}(1+t)^k dt.
ExtendedValue newton(const Params& p, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// Green function of the unit ball as one Jacobi integral of the power difference
/// A^{-q} - (A + (1-|x|^2)(1-|y|^2))^{-q}.
ExtendedValue green_direct(const Params& p, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// Green function as N(x, y) - |x|^{2-2k-d} N(x*, y). At the origin the direct path is used.
ExtendedValue green_kelvin(const Params& p, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// Poisson kernel for |x| < 1 and |y| = 1.
double poisson(const Params& p, const Vector& x, const Vector& y, double tol = kDefaultTol);

/// Explicit k = 1, d = 2 formulas for the base and W-invariant kinds. Near the wall the
/// logarithmic forms are replaced by their power series in 4 x_1 y_1 / |x - y|^2.
ExtendedValue closed_form_k1d2(KernelKind kind, const Vector& x, const Vector& y);

/// K(x, y) + K(x, sigma y) for a base kind (Newton, Green or Poisson).
ExtendedValue w_invariant(KernelKind kind, const Params& p, const Vector& x, const Vector& y,
                          double tol = kDefaultTol);

/// Kernels of two-dimensional Dyson Brownian motion (k = 1) at points given in the A_1
/// coordinates (z_1, z_2) of the positive chamber z_1 > z_2. y may lie on the chamber wall.
ExtendedValue dyson(KernelKind kind, const Vector& x, const Vector& y);

/// Dispatches on kind. Dyson kinds take A_1 coordinates and require d = 2, k = 1.
ExtendedValue evaluate(KernelKind kind, const Params& p, const Vector& x, const Vector& y,
                       double tol = kDefaultTol);

}  // namespace dunkl
