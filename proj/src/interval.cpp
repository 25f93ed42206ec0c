#include "fc/interval.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "fc/error.hpp"

namespace fc {

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("interval endpoints must be finite");
  if (lo > hi) throw UsageError("interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "] has lo > hi");
}

OpenInterval::OpenInterval(double lo, double hi) : lo_(lo), hi_(hi) {
  if (std::isnan(lo) || std::isnan(hi)) throw UsageError("open interval endpoints must not be NaN");
  if (!(lo < hi)) throw UsageError("open interval needs lo < hi");
}

Partition::Partition(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw UsageError("partition needs at least one node");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw UsageError("partition nodes must be finite");
    if (i > 0 && !(nodes_[i - 1] < nodes_[i])) throw UsageError("partition nodes must be strictly increasing");
  }
}

std::size_t Partition::locate(double x) const {
  if (x < a() || x > b()) throw UsageError("point " + std::to_string(x) + " lies outside the partition");
  if (cells() == 0) return 0;
  // first node >= x; x sits in the cell ending at that node
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  const auto k = static_cast<std::size_t>(std::distance(nodes_.begin(), it));
  return k == 0 ? 0 : k - 1;
}

std::pair<Interval, Interval> bisect(const Interval& i) {
  const double mid = i.midpoint();
  return {Interval(i.lo(), mid), Interval(mid, i.hi())};
}

Partition uniform_partition(double a, double b, std::size_t n) {
  if (n == 0) throw UsageError("uniform_partition: n must be positive");
  if (!(a <= b)) throw UsageError("uniform_partition: need a <= b");
  if (a == b) return Partition({a});
  std::vector<double> nodes(n + 1);
  const double w = b - a;
  for (std::size_t k = 0; k < n; ++k) nodes[k] = a + static_cast<double>(k) * w / static_cast<double>(n);
  nodes[n] = b;
  return Partition(std::move(nodes));
}

std::size_t cells_for_width(double a, double b, double delta) {
  if (!(delta > 0)) throw UsageError("cells_for_width: delta must be positive");
  if (!(a <= b)) throw UsageError("cells_for_width: need a <= b");
  const double q = std::floor((b - a) / delta);
  if (q > 1e15) throw UsageError("cells_for_width: delta too small for the interval");
  auto n = static_cast<std::size_t>(q) + 1;
  while (!((b - a) / static_cast<double>(n) < delta)) ++n;
  return n;
}

Partition refine(const Partition& p, const Partition& q) {
  if (p.a() != q.a() || p.b() != q.b()) throw UsageError("refine: partitions have different endpoints");
  std::vector<double> out;
  out.reserve(p.nodes().size() + q.nodes().size());
  std::set_union(p.nodes().begin(), p.nodes().end(), q.nodes().begin(), q.nodes().end(), std::back_inserter(out));
  return Partition(std::move(out));
}

double shrink_to_point(const NestedSequence& s, double tol, std::uint64_t cap) {
  if (!(tol > 0)) throw UsageError("shrink_to_point: tol must be positive");
  Interval cur = s(1);
  for (std::uint64_t k = 1; k <= cap; ++k) {
    if (cur.length() < tol) return cur.midpoint();
    if (k == cap) break;
    Interval next = s(k + 1);
    if (!cur.contains(next)) {
      throw MathError(Failure::nesting_violation,
                      "interval " + std::to_string(k + 1) + " is not inside interval " + std::to_string(k));
    }
    cur = next;
  }
  throw MathError(Failure::iteration_cap, "lengths still >= tol after " + std::to_string(cap) +
                                              " intervals; the intersection may not be a single point");
}

}  // namespace fc
