#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "fc/calculus.hpp"
#include "fc/error.hpp"

using namespace fc;

namespace {

const LimitSchedule two_sided{};

}  // namespace

TEST_CASE("limits") {
  const LimitReport r = limit(parse("(x^2-1)/(x-1)"), 1, two_sided, 1e-6);
  CHECK(r.converged);
  CHECK(std::fabs(r.estimate - 2) <= 1e-6);
  CHECK(r.spread <= 1e-6);
  for (double c : {-2.0, 0.0, 3.5}) CHECK(limit(parse("x"), c, two_sided, 1e-9).estimate == doctest::Approx(c));
  CHECK(std::fabs(limit(parse("sin(x)/x"), 0, two_sided, 1e-6).estimate - 1) <= 1e-6);

  try {
    limit(parse("abs(x)/x"), 0, two_sided, 1e-6);
    FAIL("no throw");
  } catch (const OneSidedMismatch& e) {
    CHECK(e.left() == -1);
    CHECK(e.right() == 1);
  }
  LimitSchedule left;
  left.mode = LimitMode::left;
  CHECK(limit(parse("abs(x)/x"), 0, left, 1e-9).estimate == -1);
  LimitSchedule right;
  right.mode = LimitMode::right;
  CHECK(limit(parse("abs(x)/x"), 0, right, 1e-9).estimate == 1);

  try {
    limit(parse("1/x^2"), 0, two_sided, 1e-6);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::divergence);
  }
  const LimitReport osc = limit(parse("sin(1/x)"), 0, two_sided, 1e-6);
  CHECK_FALSE(osc.converged);
}

TEST_CASE("limit algebra") {
  Rng rng(21);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const Expr f = parse(oracle::random_smooth(rng, 2));
    const Expr g = parse(oracle::random_smooth(rng, 2));
    const double c = rng.uniform(-1, 1);
    const double k = rng.uniform(-3, 3);
    const double tol = 1e-6;
    const LimitReport lf = limit(f, c, two_sided, tol);
    const LimitReport lg = limit(g, c, two_sided, tol);
    if (!lf.converged || !lg.converged) continue;
    ++checked;
    const double scale = 1 + std::fabs(lf.estimate) + std::fabs(lg.estimate);
    CHECK(std::fabs(limit(f + g, c, two_sided, tol).estimate - (lf.estimate + lg.estimate)) <= 4 * tol * scale);
    CHECK(std::fabs(limit(k * f, c, two_sided, tol).estimate - k * lf.estimate) <= 4 * tol * scale * (1 + std::fabs(k)));
    CHECK(std::fabs(limit(f * g, c, two_sided, tol).estimate - lf.estimate * lg.estimate) <= 4 * tol * scale * scale);
  }
  CHECK(checked >= 45);
}

TEST_CASE("numeric derivatives") {
  CHECK(std::fabs(derivative(parse("x^2"), 1, two_sided, 1e-6).estimate - 2) <= 1e-6);
  CHECK(std::fabs(derivative(parse("7"), 0.3, two_sided, 1e-6).estimate) <= 1e-12);
  CHECK(std::fabs(derivative(parse("exp(x)"), 0, two_sided, 1e-6).estimate - 1) <= 1e-6);
  const LimitReport a = derivative(parse("abs(x)"), 1, two_sided, 1e-6);
  CHECK(a.estimate == doctest::Approx(1));
  CHECK_THROWS_AS(derivative(parse("abs(x)"), 0, two_sided, 1e-6), OneSidedMismatch);
}

TEST_CASE("extreme points") {
  const Extremum p = extreme_point(parse("x*(1-x)"), 0, 1);
  CHECK(std::fabs(p.x - 0.5) <= 1e-6);
  CHECK(p.value == 0.25);
  const Extremum q = extreme_point(parse("x"), 0, 1);
  CHECK(q.x == 1);
  CHECK(q.value == 1);
  const Extremum c = extreme_point(parse("3"), -2, 5);
  CHECK(c.value == 3);
  CHECK(c.x == -2);
  const Extremum s = extreme_point(parse("sin(x)"), 0, 3);
  CHECK(std::fabs(s.x - std::numbers::pi / 2) <= 1e-6);
  CHECK_THROWS_AS(extreme_point(parse("x"), 1, 0), UsageError);
}

TEST_CASE("Rolle witnesses") {
  const Witness w = rolle_witness(parse("x*(1-x)"), 0, 1, 1e-8);
  CHECK(std::fabs(w.point - 0.5) <= 1e-8);
  CHECK(w.residual <= 1e-8);
  const Witness s = rolle_witness(parse("sin(x)"), 0, 3.141592653589793, 1e-8);
  CHECK(std::fabs(s.point - std::numbers::pi / 2) <= 1e-6);
  const Witness z = rolle_witness(parse("0*x"), 0, 1, 1e-8);
  CHECK(z.point == 0.5);
  CHECK(z.diagnostic.find("flat") != std::string::npos);
  try {
    rolle_witness(parse("x"), 0, 1, 1e-8);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::endpoint_mismatch);
  }
  const Witness a = rolle_witness(parse("abs(x-0.3)"), -0.2, 0.8, 1e-8);
  CHECK(a.point == doctest::Approx(0.3).epsilon(1e-6));
}

TEST_CASE("mean value witnesses") {
  const Witness m = mvt_witness(parse("x^2"), 0, 2, 1e-8);
  CHECK(std::fabs(m.point - 1) <= 1e-8);
  const Witness c = mvt_witness(parse("x^3"), -1, 1, 1e-8);
  CHECK(std::fabs(3 * c.point * c.point - 1) <= 1e-8);
  CHECK(std::fabs(std::fabs(c.point) - 1 / std::sqrt(3.0)) <= 1e-6);
  const Witness lin = mvt_witness(parse("3*x - 2"), -4, 9, 1e-8);
  CHECK(lin.point > -4);
  CHECK(lin.point < 9);
  CHECK(lin.residual == 0);

  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const Expr f = parse(oracle::random_smooth(rng, 2));
    const double a = rng.uniform(-2, 1);
    const double b = a + rng.uniform(0.2, 2);
    const double tol = 1e-8;
    const Witness w = mvt_witness(f, a, b, tol);
    const double slope = (eval(f, b) - eval(f, a)) / (b - a);
    CHECK(w.point > a);
    CHECK(w.point < b);
    CHECK(std::fabs(eval(differentiate(f), w.point) - slope) <= tol);
  }
}

TEST_CASE("Cauchy mean value witnesses") {
  CHECK(std::fabs(emvt_witness(parse("x^2"), parse("x"), 0, 2, 1e-8).point - 1) <= 1e-8);
  CHECK(std::fabs(emvt_witness(parse("x^3"), parse("x^2"), 1, 2, 1e-8).point - 14.0 / 9) <= 1e-6);
  try {
    emvt_witness(parse("x"), parse("x^2"), -1, 1, 1e-8);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::derivative_vanishes);
  }
}

TEST_CASE("Taylor polynomials and Lagrange remainders") {
  const TaylorReport t = taylor(parse("exp(x)"), 0, 2, 1, 1e-12);
  const double rho = 6 * (std::numbers::e - 2.5);
  CHECK(std::fabs(t.rho - rho) <= 1e-9);
  REQUIRE(t.witness);
  CHECK(std::fabs(*t.witness - std::log(rho)) <= 1e-6);
  CHECK(t.value == 2.5);
  CHECK(std::fabs(t.value + t.remainder - std::numbers::e) <= 1e-9);
  CHECK(t.coefficients == std::vector<double>{1, 1, 0.5});

  const TaylorReport p = taylor(parse("3*x^2 - x + 1"), 0.5, 2, 2, 1e-12);
  CHECK(p.rho == 0);
  CHECK(p.remainder == 0);
  CHECK(p.value == doctest::Approx(11).epsilon(1e-15));

  const TaylorReport c = taylor(parse("x^3"), 0, 1, 1, 1e-12);
  CHECK(c.rho == doctest::Approx(2));
  REQUIRE(c.witness);
  CHECK(*c.witness == doctest::Approx(1.0 / 3));

  CHECK_THROWS_AS(taylor(parse("x"), 1, 1, 0.5, 1e-9), UsageError);
  CHECK_THROWS_AS(taylor(parse("abs(x)"), 0, 1, 1, 1e-9), MathError);
}

TEST_CASE("Taylor identity on random inputs") {
  Rng rng(41);
  const char* fs[] = {"exp(x)", "sin(x)", "cos(2*x)", "exp(sin(x))", "x^5 - x", "1/(1+x^2)"};
  for (int t = 0; t < 30; ++t) {
    const Expr f = parse(fs[rng.integer(0, 5)]);
    const double a = rng.uniform(-1, 1);
    const double x = a + rng.uniform(0.1, 1);
    const auto n = static_cast<unsigned>(rng.integer(0, 5));
    const TaylorReport r = taylor(f, a, n, x, 1e-12);
    CHECK(std::fabs(r.value + r.remainder - eval(f, x)) <= 1e-9 * (1 + std::fabs(eval(f, x))));
    if (r.witness) {
      CHECK(*r.witness > a);
      CHECK(*r.witness < x);
    }
  }
}

TEST_CASE("polynomial check") {
  CHECK(polynomial_check(parse("3*x^2 - x"), -1, 2, 2, 100, 1e-9).ok);
  CHECK_FALSE(polynomial_check(parse("3*x^2 - x"), -1, 2, 1, 100, 1e-9).ok);
  CHECK_FALSE(polynomial_check(parse("exp(x)"), 0, 1, 5, 100, 1e-9).ok);
  CHECK(polynomial_check(parse("4"), 0, 1, 0, 50, 1e-9).ok);
  CHECK(polynomial_check(parse("(x-1)^4"), 0, 3, 4, 200, 1e-9).ok);
}

TEST_CASE("shape checks") {
  CHECK(shape_check(parse("x^2"), -1, 1, Shape::convex, 1000, 1e-12).ok);
  CHECK(shape_check(parse("x^3"), 0, 2, Shape::increasing, 1000, 1e-12).ok);
  CHECK(shape_check(parse("x^3"), -1, 1, Shape::increasing, 1000, 1e-12).ok);
  const ShapeResult s = shape_check(parse("sin(x)"), 0, 1, Shape::constant, 100, 1e-9);
  CHECK_FALSE(s.ok);
  REQUIRE(s.counterexample.size() == 2);
  CHECK(std::fabs(std::sin(s.counterexample[0]) - std::sin(s.counterexample[1])) > 1e-9);
  const ShapeResult n = shape_check(parse("-x^3"), -1, 1, Shape::convex, 1000, 1e-12);
  CHECK_FALSE(n.ok);
  REQUIRE(n.counterexample.size() == 3);
  CHECK(shape_check(parse("7"), 0, 1, Shape::constant, 100, 0).ok);
  CHECK(shape_check(parse("x"), 0, 1, Shape::increasing, 100, 0, 5).ok);
  CHECK_FALSE(shape_check(parse("-x"), 0, 1, Shape::increasing, 100, 0, 5).ok);
  CHECK_THROWS_AS(shape_check(parse("x"), 0, 1, Shape::convex, 2, 0), UsageError);

  // Convexity follows from a nonnegative second derivative on a grid.
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    const double c2 = rng.uniform(0, 2), c4 = rng.uniform(0, 1), c1 = rng.uniform(-3, 3);
    const Expr f = Expr::constant(c4) * pow(Expr::variable(), 4) + Expr::constant(c2) * pow(Expr::variable(), 2) +
                   Expr::constant(c1) * Expr::variable();
    CHECK(shape_check(f, -2, 2, Shape::convex, 500, 1e-9, static_cast<std::uint64_t>(t)).ok);
  }
}

TEST_CASE("piecewise linear functions") {
  const PiecewiseLinear f({0, 1}, {0, 10});
  CHECK(f(0.5) == 5);
  CHECK(f(-3) == 0);
  CHECK(f(2) == 0);
  const PiecewiseLinear g({0, 0.3, 0.7, 2}, {1, -2, 5, 4});
  for (std::size_t i = 0; i < g.nodes().size(); ++i) CHECK(g(g.nodes()[i]) == g.values()[i]);
  CHECK(g(-1) == 1);
  CHECK(g(3) == 0);
  CHECK_THROWS_AS(PiecewiseLinear({0, 0}, {1, 2}), UsageError);
  CHECK_THROWS_AS(PiecewiseLinear({}, {}), UsageError);
  CHECK_THROWS_AS(PiecewiseLinear({0, 1}, {1}), UsageError);
}
