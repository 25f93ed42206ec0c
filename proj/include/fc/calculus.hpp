#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fc/expr.hpp"

namespace fc {

using RealFunction = std::function<double(double)>;

enum class LimitMode { left, right, two_sided };

/// Punctured windows of radius delta0 * shrink^j, j < steps, each sampled at
/// c +- delta * i / (samples + 1) for i = 1..samples.
struct LimitSchedule {
  LimitMode mode = LimitMode::two_sided;
  double delta0 = 1e-2;
  double shrink = 0.5;
  unsigned steps = 30;
  unsigned samples = 8;
};

struct LimitReport {
  double estimate = 0;
  double spread = 0;  ///< max - min over the samples of the reported step
  bool converged = false;
  unsigned step = 0;  ///< index of the reported step
  std::optional<double> left;
  std::optional<double> right;
};

/// The estimate of a step is the sample nearest to c on each side used
/// (their mean in two-sided mode). Converged once successive estimates and
/// the spread are both below tol. Two-sided mode throws OneSidedMismatch when
/// the one-sided limits settle apart, and a spread that keeps growing throws
/// MathError(divergence). Without convergence the steadiest step is reported.
LimitReport limit(const RealFunction& f, double c, const LimitSchedule& sched, double tol);
LimitReport limit(const Expr& f, double c, const LimitSchedule& sched, double tol);

/// Limit of the difference quotient at c, checked against the symbolic
/// derivative when there is one: a gap above 1e-4 * max(1, |f'(c)|) throws
/// MathError(ill_conditioned).
LimitReport derivative(const Expr& f, double c, const LimitSchedule& sched, double tol);

struct Extremum {
  double x;
  double value;
};

/// Grid argmax refined `refinements` times by a factor 10 around the
/// incumbent. Ties go to the smallest x.
Extremum extreme_point(const RealFunction& f, double a, double b, unsigned grid = 1001, unsigned refinements = 3);
Extremum extreme_point(const Expr& f, double a, double b, unsigned grid = 1001, unsigned refinements = 3);

struct Witness {
  double point;
  double residual;
  std::string diagnostic;  ///< empty unless something noteworthy happened
};

Witness rolle_witness(const Expr& f, double a, double b, double tol);
/// Rolle applied to f(x) - slope * x.
Witness mvt_witness(const Expr& f, double a, double b, double tol);
/// Rolle applied to [g(b)-g(a)][f(x)-f(a)] - [g(x)-g(a)][f(b)-f(a)];
/// the residual is |f'(c)/g'(c) - ratio|.
Witness emvt_witness(const Expr& f, const Expr& g, double a, double b, double tol);

struct TaylorReport {
  double value;                     ///< P_n(x)
  double rho;                       ///< (n+1)!/(x-a)^(n+1) * (f(x) - P_n(x))
  std::optional<double> witness;    ///< c in (a, x) with f^(n+1)(c) = rho
  double remainder;
  std::vector<double> coefficients;  ///< f^(k)(a)/k!
};

TaylorReport taylor(const Expr& f, double a, unsigned n, double x, double tol);

struct PolynomialCheck {
  bool ok;
  double worst_x;         ///< where the larger of the two residuals peaked
  double derivative_max;  ///< max |f^(n+1)| over the samples
  double interpolation_max;
};

/// f^(n+1) vanishes on the samples and the interpolant through n+1 Chebyshev
/// nodes reproduces f.
PolynomialCheck polynomial_check(const Expr& f, double a, double b, unsigned n, unsigned samples, double tol);

enum class Shape { convex, increasing, constant };

const char* to_string(Shape s) noexcept;

struct ShapeResult {
  bool ok;
  std::vector<double> counterexample;  ///< (c, t, x), (c, x) or (argmin, argmax)
};

/// Random triples or pairs drawn from `seed`; `constant` uses an even grid.
ShapeResult shape_check(const Expr& f, double a, double b, Shape kind, unsigned samples, double tol,
                        std::uint64_t seed = 0);

/// c_1 left of a_1, linear between nodes, 0 right of a_m.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> nodes, std::vector<double> values);

  double operator()(double x) const;

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
};

}  // namespace fc
