#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fc/interval.hpp"

namespace fc {

/// k -> s(k) for k >= 1. The rule must be pure.
using Sequence = std::function<double(std::uint64_t)>;

enum class Monotonicity { strictly_increasing, increasing, neither };

const char* to_string(Monotonicity m) noexcept;

/// Classifies s(1..n) using adjacent comparisons only.
Monotonicity check_monotone(const Sequence& s, std::uint64_t n);

struct CauchyWindow {
  bool ok;
  std::uint64_t m;  ///< worst pair, m < n
  std::uint64_t n;
  double gap;       ///< |s(m) - s(n)|
};

/// Whether every pair in [lo, hi] is within eps. With `monotone` set only the
/// end pair is examined.
CauchyWindow check_cauchy_window(const Sequence& s, double eps, std::uint64_t lo, std::uint64_t hi,
                                 bool monotone = false);

/// max |s(k)| for k <= n, or 1 if every term is zero.
double bound_prefix(const Sequence& s, std::uint64_t n);

struct Extraction {
  std::vector<std::uint64_t> indices;  ///< N_1 < N_2 < ...
  std::vector<Interval> intervals;     ///< I_1 = box, each half of the previous
};

/// Bolzano-Weierstrass by bisection. "Infinitely many terms" is read as
/// "more terms among the unused indices up to budget"; ties go left.
Extraction bw_extract(const Sequence& s, const Interval& box, unsigned depth, std::uint64_t budget);

/// Limit of an increasing sequence bounded by `upper`, probing indices
/// 1, 2, 4, ... until s(2m) - s(m) < tol. `cap` bounds evaluations.
double monotone_limit(const Sequence& s, double upper, double tol, std::uint64_t cap = 1'000'000);

/// Greedy N_1 = 1 < N_2 < ... with s(N_{k+1}) >= s(N_1) + k*eps.
std::vector<std::uint64_t> divergence_witness(const Sequence& s, double eps, std::uint64_t count,
                                              std::uint64_t budget);

/// Limit of a Cauchy sequence via bw_extract to depth ceil(log2(len/tol)) + 1.
/// The window [budget/2, budget] must be tol-Cauchy.
double cauchy_limit(const Sequence& s, const Interval& box, double tol, std::uint64_t budget = 1'000'000);

}  // namespace fc
