#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fc/error.hpp"
#include "fc/random.hpp"
#include "fc/suprema.hpp"

using namespace fc;

namespace {

const PredicateSet root2{[](double x) { return x * x < 2; }, 0, 2};

}  // namespace

TEST_CASE("supremum by bisection") {
  const SupResult r = supremum(root2, 1e-9);
  CHECK(std::fabs(r.value - std::numbers::sqrt2) <= 1e-9);
  CHECK(r.value <= std::numbers::sqrt2);
  const int expected = static_cast<int>(std::ceil(std::log2(2 / 1e-9)));
  CHECK(std::abs(static_cast<int>(r.iterations) - expected) <= 1);
  for (const double a : r.trace) CHECK(root2.member(a));

  const SupResult unit = supremum({[](double x) { return x <= 1; }, 0, 1}, 1e-9);
  CHECK(unit.value == 1);
  CHECK(unit.iterations == 0);

  const SupResult point = supremum({[](double x) { return x == 0; }, 0, 5}, 1e-6);
  CHECK(std::fabs(point.value) <= 1e-6);

  CHECK_THROWS_AS(supremum(root2, 0), UsageError);
  CHECK_THROWS_AS(supremum({[](double x) { return x < 1; }, 3, 2}, 1e-6), UsageError);
  CHECK_THROWS_AS(supremum({[](double x) { return x < 1; }, 2, 5}, 1e-6), UsageError);
  try {
    supremum(root2, 1e-9, 10);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::iteration_cap);
  }
}

TEST_CASE("supremum brackets the least upper bound") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const double q = rng.uniform(0.1, 10);
    const PredicateSet s{[q](double x) { return x * x * x < q; }, 0, 3};
    const double tol = 1e-7;
    const double r = supremum(s, tol).value;
    CHECK(s.member(r));
    for (int i = 0; i < 1000; ++i) {
      const double probe = rng.uniform(r + tol, 3);
      if (probe > r + tol) CHECK_FALSE(s.member(probe));
    }
  }
}

TEST_CASE("sup_witnesses approach the supremum") {
  const double sup = supremum(root2, 1e-12).value;
  const auto w = sup_witnesses(root2, sup, 10);
  REQUIRE(w.size() == 10);
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(root2.member(w[n - 1]));
    CHECK(std::fabs(w[n - 1] - std::numbers::sqrt2) < 1.0 / static_cast<double>(n));
  }
  CHECK(sup_witnesses({[](double x) { return x == 0; }, 0, 0}, 0, 3) == std::vector<double>{0, 0, 0});
  const auto unit = sup_witnesses({[](double x) { return x <= 1; }, 0, 1}, 1, 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(unit[n - 1] >= 1 - 1.0 / static_cast<double>(n));
    CHECK(unit[n - 1] <= 1);
  }
  CHECK_THROWS_AS(sup_witnesses(root2, 5, 3), MathError);
}

TEST_CASE("cut points") {
  CHECK(std::fabs(cut_point({[](double x) { return x * x * x < 2; }, 0, 2}, 1e-9) - std::cbrt(2.0)) <= 1e-9);
  CHECK(std::fabs(cut_point({[](double x) { return x < 0; }, -1, 1}, 1e-9)) <= 1e-9);
  try {
    cut_point({[](double x) { return x > 0 && x < 3.14159; }, 1, 7}, 1e-9);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::not_a_cut);
  }
  try {
    cut_point({[](double x) { return x < 0; }, 1, -1}, 1e-9);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::not_a_cut);
  }
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const double q = static_cast<double>(rng.integer(-1000, 1000)) / static_cast<double>(rng.integer(1, 97));
    const double p = cut_point({[q](double x) { return x < q; }, q - 50, q + 50}, 1e-9);
    CHECK(std::fabs(p - q) <= 1e-9);
  }
}

TEST_CASE("ivt_root") {
  const Expr f = parse("x^3 - x - 2");
  const RootResult r = ivt_root(f, 1, 2, 0, 1e-10);
  CHECK(std::fabs(eval(f, r.root)) <= 1e-8);
  CHECK(r.hi - r.lo <= 1e-10);
  CHECK(r.root == doctest::Approx(1.5213797068).epsilon(1e-9));
  CHECK(eval(f, r.lo) <= 0);
  CHECK(eval(f, r.hi) >= 0);
  CHECK(r.iterations == static_cast<unsigned>(std::ceil(std::log2(1 / 1e-10))));

  CHECK(std::fabs(ivt_root(parse("x"), -1, 1, 0, 1e-9).root) <= 1e-9);
  CHECK(ivt_root(parse("x"), -1, 2, 0.5, 1e-12).root == doctest::Approx(0.5));
  try {
    ivt_root(parse("x^2"), 1, 2, 0, 1e-9);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::bracket);
  }
  CHECK_THROWS_AS(ivt_root(parse("ln(x)"), -1, 2, 0, 1e-9), DomainError);

  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    const double a = rng.uniform(-3, 0);
    const double b = rng.uniform(0.5, 3);
    const double tol = std::ldexp(1.0, -static_cast<int>(rng.integer(5, 40)));
    const RootResult q = ivt_root(parse("x^3 + x"), a, b, 0.25, tol);
    CHECK(q.root >= a);
    CHECK(q.root <= b);
    CHECK(q.hi - q.lo < tol);
  }
}

TEST_CASE("affine maps") {
  const Expr id = affine_map(0, 1, 0, 1);
  for (double x : {0.0, 0.5, 1.0}) CHECK(eval(id, x) == x);
  CHECK(eval(affine_map(0, 1, 3, 5), 0.5) == 4);
  const Expr m = affine_map(-1, 1, 0, 1);
  CHECK(eval(m, -1) == 0);
  CHECK(eval(m, 1) == 1);
  CHECK_THROWS_AS(affine_map(1, 1, 0, 1), UsageError);

  Rng rng(6);
  for (int t = 0; t < 100; ++t) {
    const double a0 = rng.uniform(-5, 5), b0 = a0 + rng.uniform(0.1, 5);
    const double a = rng.uniform(-5, 5), b = a + rng.uniform(0.1, 5);
    const Expr there = affine_map(a0, b0, a, b);
    const Expr back = affine_map(a, b, a0, b0);
    const double x = rng.uniform(a0, b0);
    CHECK(std::fabs(eval(back, eval(there, x)) - x) <= 1e-12 * std::max(1.0, std::fabs(x)));
    CHECK(std::fabs(eval(there, b0) - b) <= 4e-16 * std::max(1.0, std::fabs(b)) * 4);
  }
}
