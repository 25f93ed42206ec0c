#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fc/error.hpp"
#include "fc/sequences.hpp"

using namespace fc;

namespace {

double alt(std::uint64_t k) { return k % 2 ? -1.0 : 1.0; }
double recip(std::uint64_t k) { return 1.0 / static_cast<double>(k); }

void check_selector(const std::vector<std::uint64_t>& idx) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    CHECK(idx[k] >= k + 1);
    if (k) CHECK(idx[k] > idx[k - 1]);
  }
}

}  // namespace

TEST_CASE("check_monotone") {
  CHECK(check_monotone([](std::uint64_t k) { return double(k); }, 100) == Monotonicity::strictly_increasing);
  CHECK(check_monotone([](std::uint64_t) { return 1.0; }, 100) == Monotonicity::increasing);
  CHECK(check_monotone(alt, 3) == Monotonicity::neither);
  CHECK(std::string(to_string(Monotonicity::strictly_increasing)) == "strictly-increasing");
  CHECK_THROWS_AS(check_monotone(alt, 1), UsageError);
}

TEST_CASE("check_cauchy_window") {
  const CauchyWindow a = check_cauchy_window(recip, 0.1, 20, 1000);
  CHECK(a.ok);
  CHECK(a.gap == doctest::Approx(1.0 / 20 - 1.0 / 1000));
  CHECK(a.m == 20);
  CHECK(a.n == 1000);

  const CauchyWindow b = check_cauchy_window([](std::uint64_t k) { return double(k); }, 0.5, 1, 2);
  CHECK_FALSE(b.ok);
  CHECK(b.m == 1);
  CHECK(b.n == 2);

  const CauchyWindow c = check_cauchy_window(alt, 1, 1, 100);
  CHECK_FALSE(c.ok);
  CHECK(c.gap == 2);
  CHECK(std::fabs(alt(c.m) - alt(c.n)) == 2);

  // The monotone shortcut only inspects the window ends.
  const CauchyWindow d = check_cauchy_window(recip, 0.1, 20, 1000, true);
  CHECK(d.ok);
  CHECK(d.gap == doctest::Approx(a.gap));
}

TEST_CASE("bound_prefix") {
  CHECK(bound_prefix(alt, 10) == 1);
  CHECK(bound_prefix([](std::uint64_t) { return 0.0; }, 5) == 1);
  CHECK(bound_prefix(recip, 3) == 1);
  CHECK(bound_prefix([](std::uint64_t k) { return -3.0 * double(k); }, 4) == 12);
}

TEST_CASE("bw_extract on an alternating sequence takes the left half") {
  const Extraction e = bw_extract(alt, Interval(-1, 1), 10, 10'000);
  REQUIRE(e.indices.size() == 10);
  REQUIRE(e.intervals.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(alt(e.indices[k]) == -1);
    CHECK(e.intervals[k].contains(-1));
    CHECK(e.intervals[k].length() == std::ldexp(2.0, -static_cast<int>(k)));
  }
  check_selector(e.indices);
}

TEST_CASE("bw_extract structural properties") {
  const Extraction e = bw_extract(recip, Interval(0, 1), 20, 1'000'000);
  REQUIRE(e.intervals.size() == 20);
  CHECK(e.intervals.back().contains(0));
  check_selector(e.indices);
  for (std::size_t k = 0; k < e.indices.size(); ++k) {
    CHECK(e.intervals[k].contains(recip(e.indices[k])));
    if (k) {
      CHECK(e.intervals[k - 1].contains(e.intervals[k]));
      CHECK(e.intervals[k].length() == e.intervals[k - 1].length() / 2);
    }
  }
  CHECK(recip(e.indices.back()) < 1e-5);

  const Extraction c = bw_extract([](std::uint64_t) { return 0.3; }, Interval(-0.7, 1.3), 5, 100);
  check_selector(c.indices);
  for (const auto& i : c.intervals) CHECK(i.contains(0.3));

  CHECK_THROWS_AS(bw_extract(recip, Interval(0.5, 1), 5, 100), MathError);
  try {
    bw_extract(recip, Interval(0, 1), 40, 100);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::budget_exhausted);
  }
}

TEST_CASE("monotone_limit") {
  const double r = monotone_limit([](std::uint64_t k) { return 1 - recip(k); }, 1, 1e-6);
  CHECK(std::fabs(r - 1) <= 1e-6);
  CHECK(r <= 1);
  CHECK(monotone_limit([](std::uint64_t) { return 1.0; }, 1, 1e-3) == 1);
  try {
    monotone_limit([](std::uint64_t k) { return double(k); }, 10, 1e-6);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::bound_violation);
    CHECK(std::string(e.what()).find("11") != std::string::npos);
  }
}

TEST_CASE("divergence_witness") {
  const auto w = divergence_witness([](std::uint64_t k) { return double(k); }, 1, 5, 1000);
  CHECK(w == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6});

  try {
    divergence_witness([](std::uint64_t k) { return 1 - recip(k); }, 0.1, 20, 1'000'000);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::budget_exhausted);
  }

  const Sequence root = [](std::uint64_t k) { return std::sqrt(double(k)); };
  const auto v = divergence_witness(root, 0.5, 3, 10'000);
  REQUIRE(v.size() == 4);
  check_selector(v);
  for (std::size_t k = 1; k < v.size(); ++k) CHECK(root(v[k]) >= root(v[0]) + double(k) * 0.5);
}

TEST_CASE("cauchy_limit") {
  // 1/k is 1e-6-Cauchy on [m, 2m] only once m passes 5e5, so the probe
  // window needs a budget near 2^21.
  CHECK(std::fabs(cauchy_limit(recip, Interval(0, 1), 1e-6, 1u << 22)) <= 1e-6);
  try {
    cauchy_limit(recip, Interval(0, 1), 1e-6);
    FAIL("no throw");
  } catch (const MathError& e) {
    CHECK(e.failure() == Failure::not_cauchy);
  }
  const Sequence euler = [](std::uint64_t k) { return std::pow(1 + recip(k), double(k)); };
  CHECK(std::fabs(cauchy_limit(euler, Interval(2, 3), 1e-4) - std::numbers::e) <= 1e-3);
  CHECK(cauchy_limit([](std::uint64_t) { return 0.1; }, Interval(0, 1), 1e-9) == 0.1);
}
