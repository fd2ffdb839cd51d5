#include <doctest.h>

#include <cmath>
#include <random>

#include "dunkl/kernels.hpp"

using namespace dunkl;

namespace {

/// Newton kernel by a fixed 10^4-node Gauss-Jacobi rule: an independent brute-force path.
double newton_brute_force(const Params& p, const Vector& x, const Vector& y) {
  static const QuadratureRule rule1 = jacobi_rule(1.0, 10000);
  const QuadratureRule rule = p.k == 1.0 ? rule1 : jacobi_rule(p.k, 10000);
  double prime = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) prime += x[i] * y[i];
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double a = norm2(x) + norm2(y) - 2.0 * (rule.nodes[i] * x[0] * y[0] + prime);
    acc += rule.weights[i] * std::pow(a, 1.0 - p.k - 0.5 * p.d);
  }
  return p.newton_prefactor() * acc;
}

Vector random_in_ball(std::mt19937_64& rng, int d, double radius) {
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u;
  Vector v(static_cast<std::size_t>(d));
  for (double& c : v) c = n(rng);
  return (radius * std::pow(u(rng), 1.0 / d) / norm(v)) * v;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("Newton kernel against a 10^4-node rule") {
  const Params p = make_params(3, 1.0);
  const Vector x{0.3, 0.2, 0.0};
  const Vector y{0.1, -0.4, 0.2};
  CHECK(newton(p, x, y).value() == doctest::Approx(newton_brute_force(p, x, y)).epsilon(1e-10));
  const Params q = make_params(2, 1.0);
  CHECK(newton(q, Vector{0.5, 0.1}, Vector{-0.2, 0.7}).value() ==
        doctest::Approx(newton_brute_force(q, Vector{0.5, 0.1}, Vector{-0.2, 0.7})).epsilon(1e-10));
  const Params r = make_params(1, 1.0);
  CHECK(newton(r, Vector{0.5}, Vector{-0.9}).value() ==
        doctest::Approx(newton_brute_force(r, Vector{0.5}, Vector{-0.9})).epsilon(1e-10));
}

TEST_CASE("closed forms for k = 1, d = 2") {
  const Params p = make_params(2, 1.0);
  const Vector x{0.3, 0.2};
  const Vector y{-0.5, 0.4};
  const Vector z{0.6, -0.8};
  CHECK(newton(p, x, y).value() ==
        doctest::Approx(closed_form_k1d2(KernelKind::Newton, x, y).value()).epsilon(1e-10));
  CHECK(green_direct(p, x, y).value() ==
        doctest::Approx(closed_form_k1d2(KernelKind::Green, x, y).value()).epsilon(1e-10));
  CHECK(poisson(p, x, z) == doctest::Approx(closed_form_k1d2(KernelKind::Poisson, x, z).value()).epsilon(1e-10));
  CHECK(w_invariant(KernelKind::GreenW, p, x, y).value() ==
        doctest::Approx(closed_form_k1d2(KernelKind::GreenW, x, y).value()).epsilon(1e-10));
  // close to the wall the series branch of the closed form takes over
  const Vector xw{1e-4, 0.3};
  const Vector yw{2e-4, -0.1};
  CHECK(newton(p, xw, yw).value() ==
        doctest::Approx(closed_form_k1d2(KernelKind::Newton, xw, yw).value()).epsilon(1e-9));
}

TEST_CASE("Green function from the origin is radial") {
  for (int d : {2, 3, 5}) {
    for (double k : {0.5, 1.7}) {
      const Params p = make_params(d, k);
      Vector y(static_cast<std::size_t>(d));
      y[0] = 0.3;
      y[d - 1] = -0.4;
      const double expected = p.C_k * (std::pow(norm(y), p.newton_exponent()) - 1.0);
      const Vector zero(static_cast<std::size_t>(d));
      CHECK(green_direct(p, zero, y).value() == doctest::Approx(expected).epsilon(1e-10));
      CHECK(green_kelvin(p, zero, y).value() == doctest::Approx(expected).epsilon(1e-10));
      CHECK(poisson(p, zero, (1.0 / norm(y)) * y) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("Green function vanishes on the sphere") {
  const Params p = make_params(3, 0.5);
  const Vector x{0.6, 0.0, 0.8};
  const Vector y{0.1, 0.3, -0.2};
  CHECK(std::abs(green_direct(p, x, y).value()) < 1e-14);
  CHECK(std::abs(green_direct(p, y, x).value()) < 1e-14);
}

TEST_CASE("symmetry, reflection invariance and positivity (property)") {
  std::mt19937_64 rng(17);
  for (int d : {2, 3, 4}) {
    const Params p = make_params(d, 0.7);
    for (int i = 0; i < 200; ++i) {
      const Vector x = random_in_ball(rng, d, 1.0);
      const Vector y = random_in_ball(rng, d, 1.0);
      const double g = green_direct(p, x, y).value();
      CHECK(g > 0.0);
      CHECK(green_direct(p, y, x).value() == doctest::Approx(g).epsilon(1e-9));
      CHECK(green_direct(p, reflect(x), reflect(y)).value() == doctest::Approx(g).epsilon(1e-9));
      CHECK(green_kelvin(p, x, y).value() == doctest::Approx(g).epsilon(1e-8));
      const double n = newton(p, x, y).value();
      CHECK(n > g);
      CHECK(newton(p, y, x).value() == doctest::Approx(n).epsilon(1e-9));
    }
  }
}

TEST_CASE("Newton kernel is homogeneous of degree 2 - 2k - d (property)") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> s(0.1, 10.0);
  const Params p = make_params(3, 1.3);
  for (int i = 0; i < 100; ++i) {
    const Vector x = random_in_ball(rng, 3, 2.0);
    const Vector y = random_in_ball(rng, 3, 2.0);
    const double lambda = s(rng);
    CHECK(newton(p, lambda * x, lambda * y).value() ==
          doctest::Approx(std::pow(lambda, p.newton_exponent()) * newton(p, x, y).value()).epsilon(1e-9));
  }
}

TEST_CASE("kernels are infinite on the orbit") {
  const Params p = make_params(2, 1.0);
  const Vector x{0.3, 0.2};
  CHECK(newton(p, x, x).is_infinite());
  CHECK(newton(p, x, reflect(x)).is_infinite());
  CHECK(green_direct(p, x, reflect(x)).is_infinite());
  CHECK(green_kelvin(p, x, x).is_infinite());
}

TEST_CASE("W-invariant kernels sum over the orbit") {
  const Params p = make_params(3, 1.5);
  const Vector x{0.2, 0.1, 0.3};
  const Vector y{-0.4, 0.2, 0.1};
  CHECK(w_invariant(KernelKind::Newton, p, x, y).value() ==
        doctest::Approx(newton(p, x, y).value() + newton(p, x, reflect(y)).value()).epsilon(1e-12));
  CHECK(w_invariant(KernelKind::NewtonW, p, x, y).value() ==
        doctest::Approx(newton(p, x, y).value() + newton(p, x, reflect(y)).value()).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  const Params p = make_params(2, 1.0);
  CHECK_THROWS_AS(poisson(p, Vector{0.1, 0.1}, Vector{0.5, 0.5}), NotOnSphere);
  CHECK_THROWS_AS(poisson(p, Vector{1.0, 0.1}, Vector{0.6, 0.8}), OutsideBall);
  CHECK_THROWS_AS(green_direct(p, Vector{1.5, 0.1}, Vector{0.1, 0.1}), OutsideBall);
  CHECK_THROWS_AS(dyson(KernelKind::NewtonDyson, Vector{0.1, 0.5}, Vector{0.3, 0.1}), NotInChamber);
  CHECK_THROWS_AS(evaluate(KernelKind::GreenDyson, make_params(3, 1.0), Vector{0.5, 0.1, 0.0}, Vector{0.3, 0.1, 0.0}),
                  InvalidParams);
}

TEST_CASE("Dyson kernels") {
  const Params p = make_params(2, 1.0);
  const Vector x{0.5, -0.1};
  const Vector y{0.3, 0.1};
  const Vector xa = from_a1_basis(x);
  const Vector ya = from_a1_basis(y);
  CHECK(dyson(KernelKind::GreenDyson, x, y).value() ==
        doctest::Approx(weight(p, ya) * w_invariant(KernelKind::GreenW, p, xa, ya).value()).epsilon(1e-10));
  const Vector wall = to_a1_basis(Vector{0.0, 1.0});
  CHECK(dyson(KernelKind::PoissonDyson, x, wall).value() == 0.0);
}

TEST_CASE("kernel names") {
  for (KernelKind k : {KernelKind::Newton, KernelKind::GreenW, KernelKind::PoissonDyson}) {
    CHECK(parse_kernel_kind(to_string(k)) == k);
  }
  CHECK(base_kind(KernelKind::GreenDyson) == KernelKind::Green);
  CHECK_THROWS_AS(parse_kernel_kind("heat"), InvalidParams);
}

}  // TEST_SUITE
