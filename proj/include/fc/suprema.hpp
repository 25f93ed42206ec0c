#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fc/expr.hpp"

namespace fc {

using Predicate = std::function<bool(double)>;

/// A bounded set given by a membership oracle, one known member and one
/// known upper bound.
struct PredicateSet {
  Predicate member;
  double seed;
  double bound;
};

/// A downward-closed set given by its oracle, one point inside and one
/// outside.
struct Cut {
  Predicate below;
  double sample_in;
  double sample_out;
};

struct SupResult {
  double value;
  unsigned iterations;
  std::vector<double> trace;  ///< a_1 = seed, a_2, ... (all members)
};

/// Bisection on [seed, bound]. A midpoint outside the set is taken as an
/// upper bound, so for sets that are not intervals this is the supremum of
/// the piece containing the seed.
SupResult supremum(const PredicateSet& set, double tol, unsigned cap = 200);

/// c_1..c_count in the set with |c_n - sup| < 1/n, taken from a fine
/// bisection trace. Throws MathError(no_witness) when the trace has none.
std::vector<double> sup_witnesses(const PredicateSet& set, double sup, std::size_t count);

/// Boundary point of a cut. A 65-point scan over the samples widened by
/// their distance on each side rejects oracles that are not downward closed.
double cut_point(const Cut& c, double tol, unsigned cap = 200);

struct RootResult {
  double root;
  double lo;  ///< final bracket
  double hi;
  unsigned iterations;
};

/// Bisection on the sign of f - k over [a, b].
RootResult ivt_root(const Expr& f, double a, double b, double k, double tol, unsigned cap = 200);

/// s(x - a0) + a with s = (b - a)/(b0 - a0), taking [a0, b0] onto [a, b].
Expr affine_map(double a0, double b0, double a, double b);

}  // namespace fc
