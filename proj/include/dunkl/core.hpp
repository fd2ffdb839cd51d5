#pragma once

#include <cmath>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dunkl/errors.hpp"

namespace dunkl {

/// A point of R^d in the adapted basis: the reflection flips coordinate 0.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
  Vector(std::initializer_list<double> values) : coords_(values) {}
  explicit Vector(std::vector<double> values) : coords_(std::move(values)) {}
  explicit Vector(std::span<const double> values) : coords_(values.begin(), values.end()) {}

  std::size_t size() const noexcept { return coords_.size(); }
  double& operator[](std::size_t i) { return coords_[i]; }
  double operator[](std::size_t i) const { return coords_[i]; }

  auto begin() noexcept { return coords_.begin(); }
  auto end() noexcept { return coords_.end(); }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  std::span<const double> coords() const noexcept { return coords_; }

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> coords_;
};

Vector operator+(Vector a, const Vector& b);
Vector operator-(Vector a, const Vector& b);
Vector operator*(double s, Vector v);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& x);
double norm(const Vector& x);
double distance(const Vector& a, const Vector& b);
/// |x - sigma y|, computed without forming sigma y.
double reflected_distance(const Vector& x, const Vector& y);

/// Unit vector e_i of R^dim.
Vector unit_vector(std::size_t dim, std::size_t i);

/// Multiplicity data for the rank-one reflection group in R^d.
struct Params {
  int d = 0;
  double k = 0.0;
  double gamma = 0.0;  // sum of multiplicities over positive roots; equals k in rank one
  double c_k = 0.0;    // normalizes the Jacobi weight (1-t)^{k-1}(1+t)^k to a probability
  double d_k = 0.0;    // weighted area of the unit sphere
  double C_k = 0.0;    // Newton kernel constant 1 / (d_k (d + 2 gamma - 2))

  /// c_k * C_k, the prefactor of the rank-one Newton integral.
  double newton_prefactor() const noexcept { return c_k * C_k; }
  /// Exponent of the radial fundamental solution |x|^{2 - 2k - d}.
  double newton_exponent() const noexcept { return 2.0 - 2.0 * gamma - d; }
};

/// Validates (d, k) and fills every derived constant.
Params make_params(int d, double k);

/// c_k = Gamma(k + 1/2) / (sqrt(pi) Gamma(k)), evaluated in log space.
double intertwiner_constant(double k);

/// Closed form of the weighted sphere area 2 pi^{(d-1)/2} Gamma(k + 1/2) / Gamma(k + d/2).
double weighted_sphere_area(int d, double k);

Vector reflect(const Vector& x);

/// Points closer to the origin than this are treated as the origin.
inline constexpr double kOriginCutoff = 1e-150;

/// Inversion in the unit sphere, x / |x|^2.
Vector invert(const Vector& x);

/// omega_k(x) = |x_1|^{2k}.
double weight(const Params& p, const Vector& x);

/// Distance to the unit sphere, 1 - |x|, for points of the closed ball.
double delta(const Vector& x);

/// max(|x - y|, |x - sigma y|).
double phi(const Vector& x, const Vector& y);

/// Relative closeness to the orbit {y, sigma y} below which kernels are reported infinite.
inline constexpr double kOrbitCutoff = 1e-12;

/// True when x is within the degeneracy cutoff of the orbit W.y.
bool near_orbit(const Vector& x, const Vector& y);

/// A kernel value: finite and nonnegative, or the +infinity marker on W.y.
class ExtendedValue {
 public:
  static ExtendedValue finite(double v) { return ExtendedValue(v, false); }
  static ExtendedValue infinite() { return ExtendedValue(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }
  /// The finite value; +inf for the infinity marker.
  double value() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  ExtendedValue operator+(const ExtendedValue& other) const {
    if (infinite_ || other.infinite_) return infinite();
    return finite(value_ + other.value_);
  }
  ExtendedValue scaled(double s) const { return infinite_ ? infinite() : finite(s * value_); }

  std::string to_string() const;

 private:
  ExtendedValue(double v, bool inf) : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// Coordinates (z_1, z_2) of the A_1 presentation in R^2 (reflection swaps z_1, z_2)
/// mapped to the adapted basis ((e_1 - e_2)/sqrt 2, (e_1 + e_2)/sqrt 2). Extra
/// coordinates beyond the second pass through unchanged.
Vector from_a1_basis(const Vector& z);
Vector to_a1_basis(const Vector& x);

}  // namespace dunkl
