#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace fc {

/// Closed bounded interval [lo, hi].
class Interval {
 public:
  Interval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return lo_ + (hi_ - lo_) / 2; }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const noexcept { return lo_ <= other.lo_ && other.hi_ <= hi_; }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Open interval (lo, hi); membership is strict.
class OpenInterval {
 public:
  OpenInterval(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return lo_ < x && x < hi_; }

  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;

 private:
  double lo_;
  double hi_;
};

/// Strictly increasing finite node set; the first node is a, the last is b.
/// A degenerate interval has the single-node partition.
class Partition {
 public:
  explicit Partition(std::vector<double> nodes);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::size_t cells() const noexcept { return nodes_.size() - 1; }
  double a() const noexcept { return nodes_.front(); }
  double b() const noexcept { return nodes_.back(); }
  Interval cell(std::size_t k) const { return {nodes_.at(k), nodes_.at(k + 1)}; }

  /// Index of the cell holding x. A node belongs to the cell on its left,
  /// except a itself, which belongs to the first cell.
  std::size_t locate(double x) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<double> nodes_;
};

/// k -> I_k for k >= 1. The rule must be pure.
using NestedSequence = std::function<Interval(std::uint64_t)>;

std::pair<Interval, Interval> bisect(const Interval& i);

/// Nodes a + k(b-a)/n, with the last node set to b exactly.
Partition uniform_partition(double a, double b, std::size_t n);

/// Smallest n with (b-a)/n < delta.
std::size_t cells_for_width(double a, double b, double delta);

/// Sorted union of two partitions of the same interval.
Partition refine(const Partition& p, const Partition& q);

/// Walks the sequence until length(I_k) < tol and returns the midpoint of
/// that interval. Throws MathError(nesting_violation) when I_{k+1} is not
/// inside I_k, and MathError(iteration_cap) after `cap` intervals.
double shrink_to_point(const NestedSequence& s, double tol, std::uint64_t cap = 1'000'000);

}  // namespace fc
