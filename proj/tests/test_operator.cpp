#include <doctest.h>

#include <cmath>

#include "dunkl/operator.hpp"

using namespace dunkl;

namespace {

ScalarField radial_square() {
  return {[](const Vector& x) { return norm2(x); }, "|x|^2", nullptr, Parity::EvenInX1};
}

}  // namespace

TEST_SUITE("operator") {

TEST_CASE("Dunkl Laplacian of |x|^2 is 2d + 4k") {
  for (int d : {1, 2, 3}) {
    for (double k : {0.75, 1.0, 2.5}) {
      const Params p = make_params(d, k);
      Vector x(static_cast<std::size_t>(d));
      x[0] = 0.4;
      if (d > 1) x[1] = -0.3;
      CHECK(dunkl_laplacian(radial_square(), p, x, 1e-3) == doctest::Approx(2.0 * d + 4.0 * k).epsilon(1e-6));
      const LaplacianTerms t = dunkl_laplacian_terms(radial_square(), p, x, 1e-3);
      CHECK(t.gradient == doctest::Approx(4.0 * k).epsilon(1e-8));
      CHECK(t.reflection == 0.0);
    }
  }
}

TEST_CASE("Dunkl Laplacian of |x|^4 is (4d + 8 + 8k)|x|^2") {
  const ScalarField u{[](const Vector& x) { return norm2(x) * norm2(x); }, "|x|^4", nullptr, Parity::EvenInX1};
  for (int d : {2, 3}) {
    for (double k : {0.5, 1.7}) {
      const Params p = make_params(d, k);
      const Vector x = d == 2 ? Vector{0.3, 0.5} : Vector{-0.2, 0.4, 0.6};
      CHECK(dunkl_laplacian(u, p, x, 1e-3) == doctest::Approx((4.0 * d + 8.0 + 8.0 * k) * norm2(x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("reflection term of an odd function") {
  // u = x_1: Delta u = 0, gradient term 2k / x_1, reflection term -(k / x_1^2)(2 x_1).
  const Params p = make_params(2, 1.5);
  const ScalarField u{[](const Vector& x) { return x[0]; }, "x1", nullptr, Parity::None};
  const LaplacianTerms t = dunkl_laplacian_terms(u, p, Vector{0.5, 0.2}, 1e-3);
  CHECK(t.gradient == doctest::Approx(6.0).epsilon(1e-8));
  CHECK(t.reflection == doctest::Approx(-6.0).epsilon(1e-12));
  CHECK(std::abs(t.value()) < 1e-8);
}

TEST_CASE("wall and region guards") {
  const Params p = make_params(2, 1.0);
  const ScalarField odd{[](const Vector& x) { return x[0] * x[1]; }, "x1*x2", nullptr, Parity::None};
  CHECK_THROWS_AS(dunkl_laplacian(odd, p, Vector{0.001, 0.3}, 1e-3), TooCloseToWall);
  CHECK_NOTHROW(dunkl_laplacian(radial_square(), p, Vector{0.0, 0.3}, 1e-3));
  CHECK(dunkl_laplacian(radial_square(), p, Vector{0.0, 0.3}, 1e-3) == doctest::Approx(8.0).epsilon(1e-6));
  ScalarField boxed = radial_square();
  boxed.region = [](const Vector& x) { return norm(x) < 0.5; };
  CHECK_THROWS_AS(dunkl_laplacian(boxed, p, Vector{0.3, 0.3999}, 1e-3), StencilOutsideRegion);
  CHECK_THROWS_AS(dunkl_laplacian(radial_square(), p, Vector{0.3, 0.3}, 0.0), InvalidParams);
}

TEST_CASE("gradient by central differences") {
  const ScalarField u{[](const Vector& x) { return x[0] * x[0] * x[1]; }, "x1^2 x2", nullptr, Parity::None};
  const Vector g = gradient(u, Vector{0.5, 2.0}, 1e-4);
  CHECK(g[0] == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(g[1] == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("catalog and Kelvin transforms are harmonic") {
  for (int d : {1, 2, 3}) {
    const Params p = make_params(d, d == 1 ? 0.8 : 1.3);
    const auto catalog = harmonic_catalog(p);
    CHECK(catalog.size() == 7);
    std::uint64_t seed = 1;
    for (const ScalarField& u : catalog) {
      const auto sample = harmonicity_sample(u, d, 10, seed++, 0.01);
      const HarmonicityReport r = verify_harmonicity(u, p, sample, 0.01);
      CHECK_MESSAGE(r.passed, u.label);
      const ScalarField ku = kelvin(u, p);
      const auto far = harmonicity_sample(ku, d, 10, seed++, 0.01, 2.0);
      CHECK_MESSAGE(verify_harmonicity(ku, p, far, 0.01).passed, ku.label);
    }
  }
}

TEST_CASE("a subharmonic field is not reported harmonic") {
  const Params p = make_params(2, 1.0);
  const auto sample = harmonicity_sample(radial_square(), 2, 10, 3, 0.01);
  const HarmonicityReport r = verify_harmonicity(radial_square(), p, sample, 0.01);
  CHECK_FALSE(r.passed);
  CHECK(r.failures == 10);
}

TEST_CASE("harmonicity sample respects the stencil and the wall") {
  const ScalarField odd{[](const Vector& x) { return x[0]; }, "x1", [](const Vector& x) { return norm(x) < 0.8; },
                        Parity::None};
  for (const Vector& x : harmonicity_sample(odd, 2, 50, 9, 0.01)) {
    CHECK(std::abs(x[0]) > 0.2);
    CHECK(norm(x) < 0.8);
  }
}

}  // TEST_SUITE
