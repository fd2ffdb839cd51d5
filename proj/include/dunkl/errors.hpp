#pragma once

#include <stdexcept>
#include <string>

namespace dunkl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class DegenerateOrigin : public Error {
 public:
  DegenerateOrigin() : Error("point lies within the degeneracy cutoff of the origin") {}
  using Error::Error;
};

class OutsideBall : public Error {
 public:
  OutsideBall() : Error("point lies outside the closed unit ball") {}
  using Error::Error;
};

class NotOnSphere : public Error {
 public:
  NotOnSphere() : Error("point is not on the unit sphere") {}
  using Error::Error;
};

class NotInChamber : public Error {
 public:
  NotInChamber() : Error("point is not in the positive Weyl chamber z1 > z2") {}
};

class NonFinite : public Error {
 public:
  using Error::Error;
};

class StencilOutsideRegion : public Error {
 public:
  using Error::Error;
};

class TooCloseToWall : public Error {
 public:
  using Error::Error;
};

class SlowConvergence : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature gave up; carries the best estimate it had.
class ToleranceNotReached : public Error {
 public:
  ToleranceNotReached(double estimate, double error_bound)
      : Error("quadrature tolerance not reached (estimate " + std::to_string(estimate) +
              ", error bound " + std::to_string(error_bound) + ")"),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace dunkl
