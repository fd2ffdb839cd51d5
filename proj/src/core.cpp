#include "dunkl/core.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

namespace dunkl {

Vector& Vector::operator+=(const Vector& other) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

Vector operator+(Vector a, const Vector& b) { return a += b; }
Vector operator-(Vector a, const Vector& b) { return a -= b; }
Vector operator*(double s, Vector v) { return v *= s; }

double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vector& x) { return dot(x, x); }
double norm(const Vector& x) { return std::sqrt(norm2(x)); }

double distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return std::sqrt(s);
}

double reflected_distance(const Vector& x, const Vector& y) {
  double s = (x[0] + y[0]) * (x[0] + y[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double t = x[i] - y[i];
    s += t * t;
  }
  return std::sqrt(s);
}

Vector unit_vector(std::size_t dim, std::size_t i) {
  Vector e(dim);
  e[i] = 1.0;
  return e;
}

double intertwiner_constant(double k) {
  return std::exp(std::lgamma(k + 0.5) - std::lgamma(k) - 0.5 * std::log(std::numbers::pi));
}

double weighted_sphere_area(int d, double k) {
  const double log_area = std::log(2.0) + 0.5 * (d - 1) * std::log(std::numbers::pi) +
                          std::lgamma(k + 0.5) - std::lgamma(k + 0.5 * d);
  return std::exp(log_area);
}

Params make_params(int d, double k) {
  if (d < 1) throw InvalidParams("dimension d must be at least 1");
  if (!(k > 0.0) || !std::isfinite(k)) throw InvalidParams("multiplicity k must be a positive real");
  if (!(d + 2.0 * k > 2.0)) throw InvalidParams("kernels require d + 2k > 2");
  if (d == 1 && !(k > 0.5)) throw InvalidParams("dimension one requires k > 1/2");

  Params p;
  p.d = d;
  p.k = k;
  p.gamma = k;
  p.c_k = intertwiner_constant(k);
  p.d_k = weighted_sphere_area(d, k);
  p.C_k = 1.0 / (p.d_k * (d + 2.0 * p.gamma - 2.0));
  return p;
}

Vector reflect(const Vector& x) {
  Vector r = x;
  r[0] = -r[0];
  return r;
}

Vector invert(const Vector& x) {
  const double r2 = norm2(x);
  if (!(std::sqrt(r2) > kOriginCutoff)) throw DegenerateOrigin();
  return (1.0 / r2) * x;
}

double weight(const Params& p, const Vector& x) {
  const double a = std::abs(x[0]);
  if (a == 0.0) return 0.0;
  return std::pow(a, 2.0 * p.k);
}

double delta(const Vector& x) {
  const double r = norm(x);
  if (r > 1.0 + 1e-12) throw OutsideBall();
  return std::max(0.0, 1.0 - r);
}

double phi(const Vector& x, const Vector& y) {
  return std::max(distance(x, y), reflected_distance(x, y));
}

bool near_orbit(const Vector& x, const Vector& y) {
  const double cutoff = kOrbitCutoff * (1.0 + norm(x) + norm(y));
  return std::min(distance(x, y), reflected_distance(x, y)) < cutoff;
}

std::string ExtendedValue::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

Vector from_a1_basis(const Vector& z) {
  if (z.size() < 2) throw InvalidParams("the A1 presentation needs at least two coordinates");
  Vector x = z;
  x[0] = (z[0] - z[1]) / std::numbers::sqrt2;
  x[1] = (z[0] + z[1]) / std::numbers::sqrt2;
  return x;
}

Vector to_a1_basis(const Vector& x) {
  if (x.size() < 2) throw InvalidParams("the A1 presentation needs at least two coordinates");
  Vector z = x;
  z[0] = (x[0] + x[1]) / std::numbers::sqrt2;
  z[1] = (x[1] - x[0]) / std::numbers::sqrt2;
  return z;
}

}  // namespace dunkl
