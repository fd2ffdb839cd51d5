#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dunkl/core.hpp"

using namespace dunkl;

TEST_SUITE("core") {

TEST_CASE("intertwiner constant normalizes the Jacobi weight") {
  CHECK(intertwiner_constant(1.0) == doctest::Approx(0.5).epsilon(1e-15));
  for (double k : {0.25, 0.5, 1.0, 1.7, 3.0, 12.5}) {
    // int_{-1}^{1} (1-t)^{k-1}(1+t)^k dt = 2^{2k} B(k, k+1)
    const double mass = std::pow(2.0, 2.0 * k) * std::tgamma(k) * std::tgamma(k + 1.0) / std::tgamma(2.0 * k + 1.0);
    CHECK(intertwiner_constant(k) * mass == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("weighted sphere area against direct integrals") {
  // d = 2, k = 1: int_0^{2 pi} cos^2 = pi; d = 3, k = 1: int_S z_1^2 = 4 pi / 3.
  CHECK(weighted_sphere_area(2, 1.0) == doctest::Approx(std::numbers::pi).epsilon(1e-14));
  CHECK(weighted_sphere_area(3, 1.0) == doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-14));
  // d = 1: the sphere is {-1, 1} and omega = 1 there.
  CHECK(weighted_sphere_area(1, 0.8) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("params fill every derived constant") {
  const Params p = make_params(2, 1.0);
  CHECK(p.gamma == 1.0);
  CHECK(p.C_k == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(p.newton_prefactor() == doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(p.newton_exponent() == doctest::Approx(-2.0));
  const Params q = make_params(5, 0.25);
  CHECK(q.C_k * q.d_k * (5 + 0.5 - 2) == doctest::Approx(1.0));
}

TEST_CASE("invalid params are rejected") {
  CHECK_THROWS_AS(make_params(0, 1.0), InvalidParams);
  CHECK_THROWS_AS(make_params(2, 0.0), InvalidParams);
  CHECK_THROWS_AS(make_params(2, -1.0), InvalidParams);
  CHECK_THROWS_AS(make_params(2, std::nan("")), InvalidParams);
  CHECK_THROWS_AS(make_params(1, 0.5), InvalidParams);
  CHECK_NOTHROW(make_params(1, 0.75));
}

TEST_CASE("reflection, inversion and distances") {
  const Vector x{0.3, -0.4, 1.2};
  CHECK(reflect(x) == Vector{-0.3, -0.4, 1.2});
  CHECK(reflect(reflect(x)) == x);
  const Vector xs = invert(x);
  CHECK(norm(xs) * norm(x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(invert(Vector{0.0, 0.0, 0.0}), DegenerateOrigin);
  CHECK(delta(Vector{0.6, 0.0}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(delta(Vector{1.2, 0.0}), OutsideBall);
  CHECK(phi(Vector{0.5, 0.0}, Vector{0.1, 0.0}) == doctest::Approx(0.6));
  CHECK(weight(make_params(2, 1.5), Vector{-0.5, 3.0}) == doctest::Approx(0.125));
}

TEST_CASE("reflected distance agrees with the reflected point (property)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 2000; ++i) {
    Vector x(3), y(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = u(rng);
      y[j] = u(rng);
    }
    CHECK(reflected_distance(x, y) == doctest::Approx(distance(x, reflect(y))).epsilon(1e-13));
    CHECK(reflected_distance(x, y) == doctest::Approx(reflected_distance(y, x)).epsilon(1e-13));
  }
}

TEST_CASE("orbit detection") {
  const Vector y{0.3, 0.2};
  CHECK(near_orbit(y, y));
  CHECK(near_orbit(reflect(y), y));
  CHECK_FALSE(near_orbit(Vector{0.3, 0.2 + 1e-9}, y));
}

TEST_CASE("A1 basis change is orthogonal and carries the swap to the sign flip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vector z{u(rng), u(rng), u(rng)};
    const Vector x = from_a1_basis(z);
    CHECK(norm(x) == doctest::Approx(norm(z)).epsilon(1e-14));
    const Vector back = to_a1_basis(x);
    for (int j = 0; j < 3; ++j) CHECK(back[j] == doctest::Approx(z[j]).epsilon(1e-14));
    const Vector swapped{z[1], z[0], z[2]};
    const Vector xs = from_a1_basis(swapped);
    const Vector rx = reflect(x);
    for (int j = 0; j < 3; ++j) CHECK(xs[j] == doctest::Approx(rx[j]).epsilon(1e-14));
  }
  CHECK_THROWS_AS(from_a1_basis(Vector{1.0}), InvalidParams);
}

TEST_CASE("extended values") {
  const ExtendedValue a = ExtendedValue::finite(1.5);
  const ExtendedValue inf = ExtendedValue::infinite();
  CHECK((a + a).value() == 3.0);
  CHECK((a + inf).is_infinite());
  CHECK(inf.to_string() == "inf");
  CHECK(std::isinf(inf.value()));
  CHECK(a.scaled(2.0).value() == 3.0);
}

}  // TEST_SUITE
