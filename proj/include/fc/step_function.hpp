#pragma once

#include <vector>

#include "fc/interval.hpp"

namespace fc {

/// Piecewise constant function: values()[k] on the open cell
/// (x_k, x_{k+1}). Node values are not stored; evaluating at a node gives the
/// cell on its left, and at a the first cell.
class StepFunction {
 public:
  StepFunction(Partition partition, std::vector<double> values);

  const Partition& partition() const noexcept { return partition_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double a() const noexcept { return partition_.a(); }
  double b() const noexcept { return partition_.b(); }

  /// 0 on a degenerate interval.
  double operator()(double x) const;

  friend bool operator==(const StepFunction&, const StepFunction&) = default;

 private:
  Partition partition_;
  std::vector<double> values_;
};

}  // namespace fc
