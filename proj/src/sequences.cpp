#include "fc/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fc/error.hpp"

namespace fc {

const char* to_string(Monotonicity m) noexcept {
  switch (m) {
    case Monotonicity::strictly_increasing: return "strictly-increasing";
    case Monotonicity::increasing: return "increasing";
    case Monotonicity::neither: return "neither";
  }
  return "?";
}

Monotonicity check_monotone(const Sequence& s, std::uint64_t n) {
  if (n < 2) throw UsageError("check_monotone: need n >= 2");
  bool strict = true;
  double prev = s(1);
  for (std::uint64_t k = 2; k <= n; ++k) {
    const double cur = s(k);
    if (cur < prev || std::isnan(cur)) return Monotonicity::neither;
    if (cur == prev) strict = false;
    prev = cur;
  }
  return strict ? Monotonicity::strictly_increasing : Monotonicity::increasing;
}

CauchyWindow check_cauchy_window(const Sequence& s, double eps, std::uint64_t lo, std::uint64_t hi, bool monotone) {
  if (!(eps > 0)) throw UsageError("check_cauchy_window: eps must be positive");
  if (lo < 1 || lo > hi) throw UsageError("check_cauchy_window: need 1 <= lo <= hi");
  if (monotone) {
    const double gap = std::fabs(s(hi) - s(lo));
    return {gap < eps, lo, hi, gap};
  }
  std::uint64_t imin = lo;
  std::uint64_t imax = lo;
  double vmin = s(lo);
  double vmax = vmin;
  for (std::uint64_t k = lo + 1; k <= hi; ++k) {
    const double v = s(k);
    if (v < vmin) {
      vmin = v;
      imin = k;
    }
    if (v > vmax) {
      vmax = v;
      imax = k;
    }
  }
  const double gap = vmax - vmin;
  const std::uint64_t m = std::min(imin, imax);
  const std::uint64_t n = std::max(imin, imax);
  return {gap < eps, m, n == m && hi > lo ? m + 1 : n, gap};
}

double bound_prefix(const Sequence& s, std::uint64_t n) {
  if (n < 1) throw UsageError("bound_prefix: need n >= 1");
  double m = 0.0;
  for (std::uint64_t k = 1; k <= n; ++k) m = std::max(m, std::fabs(s(k)));
  return m == 0.0 ? 1.0 : m;
}

Extraction bw_extract(const Sequence& s, const Interval& box, unsigned depth, std::uint64_t budget) {
  if (depth < 1 || depth > 60) throw UsageError("bw_extract: depth must be in [1, 60]");
  if (budget < 1) throw UsageError("bw_extract: budget must be positive");

  std::vector<double> v(budget);
  for (std::uint64_t k = 1; k <= budget; ++k) {
    v[k - 1] = s(k);
    if (!box.contains(v[k - 1])) {
      throw MathError(Failure::precondition, "term " + std::to_string(k) + " = " + std::to_string(v[k - 1]) +
                                                 " lies outside the box");
    }
  }

  Extraction out;
  out.intervals.push_back(box);
  out.indices.push_back(1);

  // Hits are counted over every index of the window whose term lies in the
  // current interval; `live` keeps the unused ones, all beyond the last pick.
  std::vector<std::uint64_t> inside;
  inside.reserve(budget);
  for (std::uint64_t k = 1; k <= budget; ++k) inside.push_back(k);
  std::vector<std::uint64_t> live(inside.begin() + 1, inside.end());

  for (unsigned step = 2; step <= depth; ++step) {
    const auto [left, right] = bisect(out.intervals.back());
    std::uint64_t hits_left = 0;
    std::uint64_t hits_right = 0;
    for (const std::uint64_t k : inside) {
      const double x = v[k - 1];
      if (left.contains(x)) ++hits_left;
      if (right.contains(x)) ++hits_right;
    }
    const Interval chosen = hits_right > hits_left ? right : left;
    auto keep = [&](std::vector<std::uint64_t>& ks) {
      std::erase_if(ks, [&](std::uint64_t k) { return !chosen.contains(v[k - 1]); });
    };
    keep(inside);
    keep(live);
    if (live.empty()) {
      throw MathError(Failure::budget_exhausted, "no unused index up to " + std::to_string(budget) +
                                                     " in the chosen half at depth " + std::to_string(step));
    }
    out.indices.push_back(live.front());
    live.erase(live.begin());
    out.intervals.push_back(chosen);
  }
  return out;
}

double monotone_limit(const Sequence& s, double upper, double tol, std::uint64_t cap) {
  if (!(tol > 0)) throw UsageError("monotone_limit: tol must be positive");
  std::uint64_t evals = 0;
  auto probe = [&](std::uint64_t k) {
    if (++evals > cap) {
      throw MathError(Failure::iteration_cap, "no convergence within " + std::to_string(cap) + " evaluations");
    }
    return s(k);
  };
  auto violation = [&](std::uint64_t k, double v) {
    return MathError(Failure::bound_violation, "s(" + std::to_string(k) + ") = " + std::to_string(v) +
                                                   " exceeds the upper bound " + std::to_string(upper));
  };

  std::uint64_t m = 1;
  double sm = probe(1);
  if (sm > upper) throw violation(1, sm);
  for (;;) {
    if (m > (std::uint64_t{1} << 62)) throw MathError(Failure::iteration_cap, "index overflow while doubling");
    const std::uint64_t m2 = 2 * m;
    const double s2 = probe(m2);
    if (s2 < sm) {
      throw MathError(Failure::precondition, "sequence decreases between " + std::to_string(m) + " and " +
                                                 std::to_string(m2));
    }
    if (s2 > upper) {
      for (std::uint64_t k = m + 1; k < m2; ++k) {
        const double v = probe(k);
        if (v > upper) throw violation(k, v);
      }
      throw violation(m2, s2);
    }
    if (s2 - sm < tol) return s2;
    m = m2;
    sm = s2;
  }
}

std::vector<std::uint64_t> divergence_witness(const Sequence& s, double eps, std::uint64_t count,
                                              std::uint64_t budget) {
  if (!(eps > 0)) throw UsageError("divergence_witness: eps must be positive");
  if (count < 1) throw UsageError("divergence_witness: count must be positive");
  std::vector<std::uint64_t> idx{1};
  const double base = s(1);
  std::uint64_t j = 1;
  for (std::uint64_t k = 1; k <= count; ++k) {
    const double target = base + static_cast<double>(k) * eps;
    for (;;) {
      ++j;
      if (j > budget) {
        throw MathError(Failure::budget_exhausted, "no index up to " + std::to_string(budget) + " reaches s(1) + " +
                                                       std::to_string(k) + "*eps; the sequence may be Cauchy");
      }
      if (s(j) >= target) break;
    }
    idx.push_back(j);
  }
  return idx;
}

double cauchy_limit(const Sequence& s, const Interval& box, double tol, std::uint64_t budget) {
  if (!(tol > 0)) throw UsageError("cauchy_limit: tol must be positive");
  if (budget < 2) throw UsageError("cauchy_limit: budget must be at least 2");
  if (box.length() == 0.0) return box.lo();
  const auto window = check_cauchy_window(s, tol, budget / 2, budget);
  if (!window.ok) {
    throw MathError(Failure::not_cauchy, "terms " + std::to_string(window.m) + " and " + std::to_string(window.n) +
                                             " differ by " + std::to_string(window.gap));
  }
  const double levels = std::ceil(std::log2(box.length() / tol));
  const unsigned depth = static_cast<unsigned>(std::clamp(levels + 1.0, 1.0, 60.0));
  const Interval last = bw_extract(s, box, depth, budget).intervals.back();
  // A window with no spread at all pins the limit to that common value.
  if (window.gap == 0.0 && last.contains(s(budget))) return s(budget);
  return last.midpoint();
}

}  // namespace fc
