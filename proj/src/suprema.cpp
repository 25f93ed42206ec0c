#include "fc/suprema.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fc/error.hpp"

namespace fc {

SupResult supremum(const PredicateSet& set, double tol, unsigned cap) {
  if (!(tol > 0)) throw UsageError("supremum: tol must be positive");
  if (!(set.seed <= set.bound)) throw UsageError("supremum: need seed <= bound");
  if (!set.member(set.seed)) throw UsageError("supremum: the seed is not a member");
  if (set.member(set.bound)) return {set.bound, 0, {set.bound}};

  SupResult r{set.seed, 0, {set.seed}};
  double a = set.seed;
  double b = set.bound;
  while (b - a >= tol) {
    if (r.iterations == cap) {
      throw MathError(Failure::iteration_cap, "bracket still " + std::to_string(b - a) + " wide after " +
                                                  std::to_string(cap) + " halvings");
    }
    const double m = a + (b - a) / 2;
    if (m == a || m == b) break;
    if (set.member(m)) {
      a = m;
    } else {
      b = m;
    }
    ++r.iterations;
    r.trace.push_back(a);
  }
  r.value = a;
  return r;
}

std::vector<double> sup_witnesses(const PredicateSet& set, double sup, std::size_t count) {
  if (count < 1) throw UsageError("sup_witnesses: count must be positive");
  const double tol = std::max(0.125 / static_cast<double>(count), 1e-15);
  const SupResult fine = supremum(set, tol);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    const double r = 1.0 / static_cast<double>(n);
    bool found = false;
    for (const double c : fine.trace) {
      if (std::fabs(c - sup) < r && set.member(c)) {
        out.push_back(c);
        found = true;
        break;
      }
    }
    if (!found) {
      throw MathError(Failure::no_witness, "no trace member within 1/" + std::to_string(n) + " of " +
                                               std::to_string(sup));
    }
  }
  return out;
}

double cut_point(const Cut& c, double tol, unsigned cap) {
  if (!(tol > 0)) throw UsageError("cut_point: tol must be positive");
  if (!c.below(c.sample_in)) throw MathError(Failure::not_a_cut, "sample_in is not below the cut");
  if (c.below(c.sample_out)) throw MathError(Failure::not_a_cut, "sample_out is below the cut");
  if (!(c.sample_in < c.sample_out)) {
    throw MathError(Failure::not_a_cut, "sample_out lies left of sample_in, so the set is not downward closed");
  }

  const double span = c.sample_out - c.sample_in;
  const double lo = c.sample_in - span;
  const double hi = c.sample_out + span;
  constexpr int probes = 65;
  double first_out = 0;
  bool seen_out = false;
  for (int i = 0; i < probes; ++i) {
    const double x = lo + (hi - lo) * i / (probes - 1);
    const bool in = c.below(x);
    if (!in && !seen_out) {
      seen_out = true;
      first_out = x;
    } else if (in && seen_out) {
      throw MathError(Failure::not_a_cut, std::to_string(x) + " is below the cut but " + std::to_string(first_out) +
                                              " is not");
    }
  }

  double a = c.sample_in;
  double b = c.sample_out;
  for (unsigned it = 0; b - a > tol; ++it) {
    if (it == cap) throw MathError(Failure::iteration_cap, "cut bracket did not close");
    const double m = a + (b - a) / 2;
    if (m == a || m == b) break;
    if (c.below(m)) {
      a = m;
    } else {
      b = m;
    }
  }
  return a + (b - a) / 2;
}

RootResult ivt_root(const Expr& f, double a, double b, double k, double tol, unsigned cap) {
  if (!(tol > 0)) throw UsageError("ivt_root: tol must be positive");
  if (a > b) std::swap(a, b);
  const double fa = f(a) - k;
  const double fb = f(b) - k;
  if (fa == 0.0) return {a, a, a, 0};
  if (fb == 0.0) return {b, b, b, 0};
  if ((fa < 0) == (fb < 0)) {
    throw MathError(Failure::bracket, "f - k has the same sign at both ends (" + std::to_string(fa) + ", " +
                                          std::to_string(fb) + ")");
  }
  double lo = a;
  double hi = b;
  unsigned it = 0;
  while (hi - lo > tol) {
    if (it == cap) throw MathError(Failure::iteration_cap, "bracket did not close");
    const double m = lo + (hi - lo) / 2;
    if (m == lo || m == hi) break;
    const double fm = f(m) - k;
    ++it;
    if (fm == 0.0) return {m, m, m, it};
    if ((fm < 0) == (fa < 0)) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return {lo + (hi - lo) / 2, lo, hi, it};
}

Expr affine_map(double a0, double b0, double a, double b) {
  if (!(a0 < b0)) throw UsageError("affine_map: need a0 < b0");
  const double s = (b - a) / (b0 - a0);
  return Expr::constant(s) * (Expr::variable() - a0) + a;
}

}  // namespace fc
