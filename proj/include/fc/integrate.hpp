#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "fc/expr.hpp"
#include "fc/interval.hpp"
#include "fc/step_function.hpp"

namespace fc {

/// Sum of value * cell width; 0 on a degenerate interval.
double step_integral(const StepFunction& phi);

/// The same function on a finer partition. Throws UsageError when omega
/// misses a node of phi's partition.
StepFunction step_reexpress(const StepFunction& phi, const Partition& omega);

enum class StepOp { add, scale, negate };

/// add uses psi; scale uses c; negate uses neither. Sums live on the common
/// refinement.
StepFunction step_combine(const StepFunction& phi, const StepFunction& psi, StepOp op, double c = 1.0);
StepFunction step_add(const StepFunction& phi, const StepFunction& psi);
StepFunction step_scale(const StepFunction& phi, double c);
StepFunction step_negate(const StepFunction& phi);

/// Restrictions to [a, c] and [c, b].
std::pair<StepFunction, StepFunction> step_split(const StepFunction& phi, double c);

struct DarbouxBounds {
  double lower;
  double upper;
};

/// Uniform n-partition; each cell's extrema are taken over m+1 evenly
/// spaced samples, endpoints included. upper(f) = -lower(-f) exactly.
DarbouxBounds darboux_bounds(const Expr& f, double a, double b, std::size_t n, std::size_t m);

struct ChoiceFunction {
  enum class Kind { left, right, midpoint, random, explicit_points };
  Kind kind = Kind::left;
  std::uint64_t seed = 0;
  std::vector<double> points;

  static ChoiceFunction left() { return {Kind::left, 0, {}}; }
  static ChoiceFunction right() { return {Kind::right, 0, {}}; }
  static ChoiceFunction midpoint() { return {Kind::midpoint, 0, {}}; }
  static ChoiceFunction random(std::uint64_t seed) { return {Kind::random, seed, {}}; }
  static ChoiceFunction explicit_points(std::vector<double> xi) { return {Kind::explicit_points, 0, std::move(xi)}; }

  /// xi_k for the cell [lo, hi] with index k.
  double pick(std::size_t k, double lo, double hi) const;
};

double riemann_sum(const Expr& f, const Partition& p, const ChoiceFunction& choice);

struct LevelRecord {
  unsigned level;
  std::size_t cells;
  double lower;
  double upper;
  double left;
  double right;
  double midpoint;
  double random;
};

struct IntegralCertificate {
  double value = 0;
  std::vector<LevelRecord> levels;
  bool converged = false;
};

/// Dyadic levels n = 2^j, j = 4..24, each with Darboux bounds (m = 8) and
/// left, right, midpoint and seeded random sums. Converged when the bounds
/// are within tol and every sum lies in [lower - tol, upper + tol]; the value
/// is the midpoint of the bounds. Throws MathError(level_cap) past j = 24.
IntegralCertificate riemann_integral(const Expr& f, double a, double b, double tol, std::uint64_t seed = 0);

struct AdditivityCheck {
  bool ok;
  double whole;
  double left;
  double right;
};

/// |int_a^b - int_a^c - int_c^b| <= 3 tol.
AdditivityCheck integral_additivity_check(const Expr& f, double a, double c, double b, double tol);

/// m(b-a) - tol <= int_a^b f <= M(b-a) + tol, after checking m <= f <= M on
/// a sample grid (MathError(precondition) otherwise).
bool bounds_check(const Expr& f, double a, double b, double m, double M, double tol);

/// x -> int_a^x f, memoised; safe to call from several threads.
class Antiderivative {
 public:
  Antiderivative(Expr f, double a, double tol);

  double operator()(double x) const;
  double base() const noexcept { return a_; }

 private:
  struct Memo {
    std::mutex mutex;
    std::map<double, double> values;
  };
  Expr f_;
  double a_;
  double tol_;
  std::shared_ptr<Memo> memo_;
};

Antiderivative antiderivative(const Expr& f, double a, double tol);

struct Ftc2Check {
  bool ok;
  double integral;
  double difference;  ///< F(b) - F(a)
};

/// int_a^b F' against F(b) - F(a), within 3 tol.
Ftc2Check ftc2_check(const Expr& F, double a, double b, double tol);

struct MeanValue {
  double xi;
  double mean;
  double residual;  ///< |f(xi) - mean|
  std::string diagnostic;
};

/// xi with (b - a) f(xi) = int_a^b f, bracketed between the extreme points.
/// The integral itself is computed to integral_tol.
MeanValue imvt_witness(const Expr& f, double a, double b, double tol, double integral_tol = 1e-6);

struct AdtCheck {
  bool ok;
  double constant;  ///< mean of F - G over the samples
  double spread;    ///< max - min of F - G
};

/// F - G is constant, given F' = G' on the samples (MathError(precondition)
/// naming the worst point otherwise).
AdtCheck adt_check(const Expr& F, const Expr& G, double a, double b, std::size_t samples, double tol);

}  // namespace fc
