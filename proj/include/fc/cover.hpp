#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fc/expr.hpp"
#include "fc/interval.hpp"
#include "fc/step_function.hpp"

namespace fc {

/// Finite family of open intervals over a closed target. Whether it covers
/// is decided once, exactly, at construction.
class OpenCover {
 public:
  OpenCover(Interval target, std::vector<OpenInterval> pieces);

  const Interval& target() const noexcept { return target_; }
  const std::vector<OpenInterval>& pieces() const noexcept { return pieces_; }
  bool covered() const noexcept { return !uncovered_; }
  /// A point of the target in no piece, when there is one.
  std::optional<double> uncovered() const noexcept { return uncovered_; }

 private:
  Interval target_;
  std::vector<OpenInterval> pieces_;
  std::optional<double> uncovered_;
};

struct CoverCheck {
  bool covered;
  std::optional<double> uncovered;
};

CoverCheck verify_cover(const OpenCover& c);

/// Sum of piece lengths exceeds the target length. Throws
/// MathError(not_a_cover) on a cover that does not cover.
bool length_inequality(const OpenCover& c);

/// Greedy left-to-right sweep; the result has minimal size.
std::vector<std::size_t> finite_subcover(const OpenCover& c);

enum class LebesgueMode { exact, sampled };

struct LebesgueNumber {
  double delta;
  double binding;  ///< where the minimum is attained (target.lo when capped)
  bool capped;     ///< every delta works; delta is the target length
};

/// exact: the largest delta, capped at the target length. sampled: the minimum
/// of half depths over `sample` evenly spaced points, with the sample doubled
/// until the half-depth balls cover the target.
LebesgueNumber lebesgue_number(const OpenCover& c, LebesgueMode mode, std::size_t sample = 64);

struct Modulus {
  double delta;
  std::size_t grid;  ///< number of window centres finally used
  bool capped;       ///< one window holds all of [a, b]
};

/// Windows where |f - f(t)| < eps/2 around grid points t, grown until they
/// cover [a, b]; delta is their exact Lebesgue number.
Modulus uniform_modulus(const Expr& f, double a, double b, double eps, std::size_t grid = 64);

struct StepApproximation {
  StepFunction phi;
  double delta;
  double sup_error;  ///< over each cell split ten times, nodes included
};

/// phi = f(x_{k-1}) on cell k of the uniform partition with
/// floor((b-a)/delta) + 1 cells, or a single cell when the modulus is capped.
StepApproximation step_approximation(const Expr& f, double a, double b, double eps);
StepApproximation step_approximation(const Expr& f, double a, double b, double eps, double delta);

}  // namespace fc
