#include <doctest.h>

#include <cmath>
#include <random>

#include "dunkl/kernels.hpp"
#include "dunkl/potential.hpp"

using namespace dunkl;

namespace {

ScalarField poly(std::function<double(const Vector&)> f, std::string label, Parity parity = Parity::None) {
  return {std::move(f), std::move(label), nullptr, parity};
}

}  // namespace

TEST_SUITE("potential") {

TEST_CASE("remainder examples") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng);
    const double b = u(rng);
    CHECK(remainder_F({2.0, 0.0}, a, b) == doctest::Approx((b - a) * (b - a)).epsilon(1e-12));
    for (double p : {1.2, 1.5, 3.0}) {
      CHECK(remainder_F({p, 0.0}, a, 0.0) == doctest::Approx((p - 1.0) * std::pow(std::abs(a), p)).epsilon(1e-12));
      CHECK(remainder_F({p, 0.0}, 0.0, b) == doctest::Approx(std::pow(std::abs(b), p)).epsilon(1e-12));
      CHECK(remainder_F({p, 0.0}, a, a) == 0.0);
      CHECK(remainder_F_eps({p, 0.0}, a, b) == doctest::Approx(remainder_F({p, 0.0}, a, b)).epsilon(1e-12));
      CHECK(remainder_F_eps({p, 0.4}, a, a) == 0.0);
    }
  }
}

TEST_CASE("remainder of close arguments keeps its relative accuracy") {
  // F(a, a + e) ~ p(p-1)/2 |a|^{p-2} e^2
  const double e = 1e-7;
  CHECK(remainder_F({3.0, 0.0}, 1.0, 1.0 + e) == doctest::Approx(3.0 * e * e).epsilon(1e-6));
  CHECK(remainder_F({1.5, 0.0}, -2.0, -2.0 - e) ==
        doctest::Approx(0.375 / std::sqrt(2.0) * e * e).epsilon(1e-6));
  CHECK(remainder_F_eps({1.5, 0.5}, 0.1, 0.1 + e) > 0.0);
}

TEST_CASE("remainder parameter validation") {
  CHECK_THROWS_AS(Remainder({1.0, 0.0}).validate(), InvalidParams);
  CHECK_THROWS_AS(Remainder({2.0, -0.1}).validate(), InvalidParams);
  CHECK_NOTHROW(Remainder({1.01, 0.0}).validate());
}

TEST_CASE("remainder comparison bands") {
  const Band b2 = remainder_band(2.0);
  CHECK(b2.lower == doctest::Approx(1.0));
  CHECK(b2.upper == doctest::Approx(1.0));
  for (double p : {1.2, 1.5, 3.0, 5.0}) {
    const Band b = remainder_band(p);
    CHECK(b.lower > 0.0);
    CHECK(std::isfinite(b.upper));
  }
  for (double p : {1.2, 1.5, 1.8}) CHECK(remainder_eps_ratio_max(p) <= 1.0 / (p - 1.0));
}

TEST_CASE("remainders are nonnegative (property)") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> e(-3.0, 3.0);
  std::uniform_real_distribution<double> pe(1.01, 6.0);
  for (int i = 0; i < 100000; ++i) {
    const double a = std::copysign(std::pow(10.0, e(rng)), e(rng));
    const double b = std::copysign(std::pow(10.0, e(rng)), e(rng));
    const double p = pe(rng);
    const double eps = std::pow(10.0, e(rng));
    REQUIRE(remainder_F({p, 0.0}, a, b) >= 0.0);
    REQUIRE(remainder_F_eps({p, eps}, a, b) >= 0.0);
  }
}

TEST_CASE("sphere degree grows toward the sphere") {
  CHECK(sphere_degree_for(0.0, 1e-10) == 8);
  CHECK(sphere_degree_for(0.5, 1e-10) < sphere_degree_for(0.9, 1e-10));
  CHECK(sphere_degree_for(0.9, 1e-12) % 2 == 0);
  CHECK_THROWS_AS(sphere_degree_for(0.5, 0.0), InvalidParams);
}

TEST_CASE("Poisson integral reproduces harmonic data") {
  for (int d : {2, 3}) {
    const Params p = make_params(d, 1.0);
    const BoundaryFunction one{[](const Vector&) { return 1.0; }, "1"};
    const BoundaryFunction prod{[](const Vector& z) { return z[0] * z[1]; }, "x1*x2"};
    const double far = 1.5;
    Vector y(static_cast<std::size_t>(d));
    y[0] = 0.6 * far;
    y[1] = 0.8 * far;
    const BoundaryFunction newton_data{[p, y](const Vector& z) { return newton(p, z, y).value(); }, "N"};
    for (const Vector& x : {Vector(static_cast<std::size_t>(d)), (d == 2 ? Vector{0.5, -0.3} : Vector{0.2, 0.4, -0.6})}) {
      CHECK(poisson_integral(one, p, x) == doctest::Approx(1.0).epsilon(1e-8));
      CHECK(poisson_integral(prod, p, x) == doctest::Approx(x[0] * x[1]).epsilon(1e-6).scale(1.0));
      CHECK(poisson_integral(newton_data, p, x) == doctest::Approx(newton(p, x, y).value()).epsilon(1e-6));
    }
    CHECK_THROWS_AS(poisson_integral(one, p, Vector(static_cast<std::size_t>(d), 0.8)), OutsideBall);
  }
}

TEST_CASE("Green-weighted integrals of radial data") {
  // int G(x, y) omega dy = (1 - |x|^2) / (2d + 4k); int G(x, y) |y|^2 omega dy = (1 - |x|^4) / (4d + 8 + 8k).
  for (int d : {2, 3}) {
    const double k = 0.5;
    const Params p = make_params(d, k);
    const std::vector<Vector> points = d == 2 ? std::vector<Vector>{Vector{0.0, 0.0}, Vector{0.35, 0.2}}
                                              : std::vector<Vector>{Vector{0.0, 0.0, 0.0}, Vector{-0.4, 0.1, 0.2}};
    for (const Vector& x : points) {
      const double r2 = norm2(x);
      CHECK(green_weighted_integral(p, x, [](const Vector&) { return 1.0; }) ==
            doctest::Approx((1.0 - r2) / (2.0 * d + 4.0 * k)).epsilon(1e-6));
      CHECK(green_weighted_integral(p, x, [](const Vector& y) { return norm2(y); }) ==
            doctest::Approx((1.0 - r2 * r2) / (4.0 * d + 8.0 + 8.0 * k)).epsilon(1e-6));
    }
  }
  CHECK_THROWS_AS(green_weighted_integral(make_params(2, 1.0), Vector{0.01, 0.3}, [](const Vector&) { return 1.0; }),
                  InvalidParams);
}

TEST_CASE("Poisson integral of the Newton kernel") {
  const Params p = make_params(2, 1.0);
  const Vector x{0.3, -0.2};
  const CheckResult in = poisson_newton_check(p, x, Vector{-0.5, 0.4});
  CHECK(in.check == "poisson-newton-interior");
  CHECK(in.passed);
  CHECK(in.residual < 1e-6);
  const CheckResult out = poisson_newton_check(p, x, Vector{1.2, 0.9});
  CHECK(out.check == "poisson-newton-exterior");
  CHECK(out.residual < 1e-6);
  const CheckResult edge = poisson_newton_check(p, x, Vector{0.6, 0.8});
  CHECK(edge.check == "poisson-newton-boundary");
  CHECK(edge.residual < 1e-5);
}

TEST_CASE("Poisson-Jensen with a subharmonic square") {
  const Params p = make_params(2, 1.0);
  const ScalarField u = poly([](const Vector& x) { return norm2(x); }, "|x|^2", Parity::EvenInX1);
  auto lap = [](const Vector&) { return 8.0; };
  CHECK(poisson_jensen_check(u, lap, p, Vector{0.0, 0.0}).residual < 1e-6);
  const CheckResult c = poisson_jensen_check(u, lap, p, Vector{0.3, 0.4});
  CHECK(c.passed);
  CHECK(c.residual < 1e-5);
  // dropping the Green term breaks the identity
  CHECK_FALSE(poisson_jensen_check(u, nullptr, p, Vector{0.3, 0.4}).passed);
}

TEST_CASE("the |u|^p formula") {
  const Params p = make_params(2, 1.0);
  const ScalarField prod = poly([](const Vector& x) { return x[0] * x[1]; }, "x1*x2");
  const ScalarField shifted = poly([](const Vector& x) { return 2.0 + x[1]; }, "2+x2", Parity::EvenInX1);
  const ScalarField constant = poly([](const Vector&) { return 3.0; }, "3", Parity::EvenInX1);
  for (const Vector& x : {Vector{0.4, 0.3}, Vector{-0.5, 0.2}}) {
    CHECK(pth_power_formula_check(prod, {2.0, 0.0}, p, x).passed);
    CHECK(pth_power_formula_check(prod, {3.0, 0.0}, p, x).passed);
    CHECK(pth_power_formula_check(prod, {3.0, 0.3}, p, x).passed);
    CHECK(pth_power_formula_check(shifted, {1.5, 0.0}, p, x).passed);
    const PthPowerReport c = pth_power_formula_check(constant, {3.0, 0.0}, p, x);
    CHECK(std::abs(c.lhs) < 1e-8);
    CHECK(c.rhs == 0.0);
  }
  const PthPowerReport r = pth_power_formula_check(prod, {3.0, 0.0}, p, Vector{0.4, 0.3});
  CHECK(r.ratio == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("slice norms") {
  const Params p = make_params(3, 1.0);
  const ScalarField c = poly([](const Vector&) { return -2.5; }, "c", Parity::EvenInX1);
  CHECK(hp_norm(c, 2.0, p, 0.7) == doctest::Approx(2.5).epsilon(1e-12));
  const ScalarField shifted = poly([](const Vector& x) { return 2.0 + x[2]; }, "2+x3", Parity::EvenInX1);
  CHECK(hp_norm(shifted, 3.0, p, 0.0) == doctest::Approx(2.0).epsilon(1e-12));
  const ScalarField prod = poly([](const Vector& x) { return x[0] * x[1]; }, "x1*x2");
  double last = 0.0;
  for (double r : {0.2, 0.4, 0.6, 0.8, 0.95}) {
    const double v = hp_norm(prod, 2.0, p, r);
    CHECK(v > last);
    last = v;
  }
}

TEST_CASE("Hardy-Stein identity") {
  const Params p = make_params(2, 1.0);
  const BoundaryFunction one{[](const Vector&) { return 1.0; }, "1"};
  const ScalarField u1 = poly([](const Vector&) { return 1.0; }, "1", Parity::EvenInX1);
  const HardyStein trivial = hardy_stein_check(one, u1, 3.0, p);
  CHECK(trivial.residual < 1e-10);
  CHECK(trivial.lhs == doctest::Approx(1.0));

  auto prod = [](const Vector& x) { return x[0] * x[1]; };
  const HardyStein hs = hardy_stein_check({prod, "x1*x2"}, poly(prod, "x1*x2"), 2.0, p);
  CHECK(hs.passed);
  CHECK(hs.residual < 1e-3);
  CHECK(hs.boundary_residual < 1e-3);

  auto shifted = [](const Vector& x) { return 2.0 + x[1]; };
  const HardyStein h3 = hardy_stein_check({shifted, "2+x2"}, poly(shifted, "2+x2", Parity::EvenInX1), 3.0, p);
  CHECK(h3.passed);

  // a wrong extension is caught
  const HardyStein wrong = hardy_stein_check({prod, "x1*x2"}, poly(shifted, "2+x2", Parity::EvenInX1), 2.0, p);
  CHECK_FALSE(wrong.passed);
}

TEST_CASE("Hardy-Stein right side grows with the radius") {
  const Params p = make_params(3, 0.5);
  const ScalarField prod = poly([](const Vector& x) { return x[0] * x[1]; }, "x1*x2");
  double last = -1.0;
  for (double r : {0.2, 0.5, 0.8, 1.0}) {
    const double v = hardy_stein_rhs(prod, 2.0, p, r);
    CHECK(v >= last);
    last = v;
  }
}

TEST_CASE("radial derivative of the Green function is the Poisson kernel") {
  for (int d : {2, 3, 4}) {
    const Params p = make_params(d, 0.8);
    const Vector zero(static_cast<std::size_t>(d));
    Vector y(static_cast<std::size_t>(d));
    y[0] = 0.6;
    y[1] = -0.8;
    const CheckResult c0 = green_poisson_gradient_check(p, zero, y);
    CHECK(c0.passed);
    CHECK(c0.rhs == doctest::Approx(1.0));
    Vector x(static_cast<std::size_t>(d));
    x[0] = 0.3;
    x[1] = 0.4;
    const CheckResult c = green_poisson_gradient_check(p, x, y);
    CHECK(c.passed);
    const CheckResult s = green_poisson_gradient_check(p, reflect(x), reflect(y));
    CHECK(s.lhs == doctest::Approx(c.lhs).epsilon(1e-12));
  }
}

TEST_CASE("extrapolation to zero") {
  std::vector<double> h, v;
  for (int j = 0; j < 5; ++j) {
    const double hj = std::ldexp(1.0, -j);
    h.push_back(hj);
    v.push_back(1.0 + 2.0 * hj - 3.0 * hj * hj);
  }
  const Extrapolation e = extrapolate_to_zero(h, v, 2);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(extrapolate_to_zero({}, {}, 1), InvalidParams);
}

TEST_CASE("check rows") {
  CheckResult c;
  c.check = "poisson-newton-interior";
  c.d = 2;
  c.k = 1.0;
  c.point = Vector{0.5, -0.25};
  c.passed = true;
  CHECK(check_csv_header() == "check,d,k,p,point,lhs,rhs,residual,tolerance,passed");
  const std::string row = to_csv_row(c);
  CHECK(row.rfind("poisson-newton-interior,2,1,0,0.5;-0.25,", 0) == 0);
  CHECK(row.substr(row.size() - 4) == "true");
}

}  // TEST_SUITE
