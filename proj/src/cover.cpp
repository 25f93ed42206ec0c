#include "fc/cover.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fc/error.hpp"

namespace fc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Pieces sorted by left end with running maxima of the right ends, so the
// reach R(x) = max{hi : lo < x < hi} is a binary search.
class Reach {
 public:
  explicit Reach(const std::vector<OpenInterval>& pieces) {
    std::vector<std::size_t> order(pieces.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return pieces[i].lo() < pieces[j].lo(); });
    double best = -kInf;
    std::size_t arg = 0;
    for (const std::size_t i : order) {
      lo_.push_back(pieces[i].lo());
      if (pieces[i].hi() > best) {
        best = pieces[i].hi();
        arg = i;
      }
      max_.push_back(best);
      arg_.push_back(arg);
    }
  }

  /// Number of pieces with lo < x.
  std::size_t left_of(double x) const {
    return static_cast<std::size_t>(std::lower_bound(lo_.begin(), lo_.end(), x) - lo_.begin());
  }

  /// R(x), or -inf when no piece contains x.
  double at(double x) const {
    const std::size_t k = left_of(x);
    if (k == 0 || !(max_[k - 1] > x)) return -kInf;
    return max_[k - 1];
  }

  /// Index of the piece realising R(x).
  std::size_t piece_at(double x) const { return arg_[left_of(x) - 1]; }

  /// Smallest lo >= x.
  double next_lo(double x) const {
    const std::size_t k = left_of(x);
    return k < lo_.size() ? lo_[k] : kInf;
  }

 private:
  std::vector<double> lo_;
  std::vector<double> max_;
  std::vector<std::size_t> arg_;
};

struct SweepResult {
  std::optional<double> uncovered;
  std::vector<std::size_t> chosen;
};

SweepResult sweep(const Interval& target, const std::vector<OpenInterval>& pieces) {
  const Reach reach(pieces);
  SweepResult out;
  double cur = target.lo();
  for (;;) {
    const double r = reach.at(cur);
    if (r == -kInf) {
      if (cur == target.lo()) {
        out.uncovered = cur;
      } else {
        const double end = std::min(reach.next_lo(cur), target.hi());
        out.uncovered = cur + (end - cur) / 2;
      }
      return out;
    }
    out.chosen.push_back(reach.piece_at(cur));
    if (r > target.hi()) return out;
    cur = r;
  }
}

}  // namespace

OpenCover::OpenCover(Interval target, std::vector<OpenInterval> pieces)
    : target_(target), pieces_(std::move(pieces)), uncovered_(sweep(target_, pieces_).uncovered) {}

CoverCheck verify_cover(const OpenCover& c) { return {c.covered(), c.uncovered()}; }

namespace {

void require_cover(const OpenCover& c, const char* op) {
  if (!c.covered()) {
    throw MathError(Failure::not_a_cover, std::string(op) + ": the pieces miss " + std::to_string(*c.uncovered()));
  }
}

}  // namespace

bool length_inequality(const OpenCover& c) {
  require_cover(c, "length_inequality");
  double total = 0;
  for (const auto& p : c.pieces()) total += p.length();
  return total > c.target().length();
}

std::vector<std::size_t> finite_subcover(const OpenCover& c) {
  require_cover(c, "finite_subcover");
  SweepResult s = sweep(c.target(), c.pieces());
  if (s.uncovered) throw MathError(Failure::sweep_stall, "sweep stalled at " + std::to_string(*s.uncovered));
  return s.chosen;
}

namespace {

LebesgueNumber exact_lebesgue(const OpenCover& c) {
  const double L = c.target().lo();
  const double H = c.target().hi();
  const Reach reach(c.pieces());

  std::vector<double> points{L, H};
  for (const auto& p : c.pieces()) {
    if (p.lo() > L && p.lo() < H) points.push_back(p.lo());
    if (p.hi() > L && p.hi() < H) points.push_back(p.hi());
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  LebesgueNumber best{H - L, L, true};
  auto consider = [&](double value, double where) {
    if (value < best.delta) best = {value, where, false};
  };
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double p = points[i];
    const double r = reach.at(p);
    if (r <= H) consider(r - p, p);
    if (i + 1 < points.size()) {
      // R is constant on the open gap, so R - x is smallest at its right end.
      const double q = points[i + 1];
      const double rm = reach.at(p + (q - p) / 2);
      if (rm <= H) consider(rm - q, q);
    }
  }
  return best;
}

LebesgueNumber sampled_lebesgue(const OpenCover& c, std::size_t sample) {
  const double L = c.target().lo();
  const double H = c.target().hi();
  std::size_t m = std::max<std::size_t>(sample, 2);
  for (;;) {
    std::vector<double> depth(m);
    std::vector<double> centre(m);
    std::vector<OpenInterval> halves;
    halves.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double s = i + 1 == m ? H : L + static_cast<double>(i) * (H - L) / static_cast<double>(m - 1);
      double d = 0;
      for (const auto& p : c.pieces()) {
        if (p.contains(s)) d = std::max(d, std::min(s - p.lo(), p.hi() - s));
      }
      centre[i] = s;
      depth[i] = d;
      if (d > 0) halves.emplace_back(s - d / 2, s + d / 2);
    }
    std::vector<std::size_t> map;
    for (std::size_t i = 0; i < m; ++i) {
      if (depth[i] > 0) map.push_back(i);
    }
    const OpenCover balls(c.target(), halves);
    if (balls.covered()) {
      LebesgueNumber out{H - L, L, true};
      for (const std::size_t k : finite_subcover(balls)) {
        const std::size_t i = map[k];
        if (depth[i] / 2 < out.delta) out = {depth[i] / 2, centre[i], false};
      }
      return out;
    }
    if (m > (std::size_t{1} << 20)) {
      throw MathError(Failure::iteration_cap, "half-depth balls still miss part of the target");
    }
    m = 2 * m - 1;
  }
}

}  // namespace

LebesgueNumber lebesgue_number(const OpenCover& c, LebesgueMode mode, std::size_t sample) {
  require_cover(c, "lebesgue_number");
  if (!(c.target().length() > 0)) throw UsageError("lebesgue_number: the target must be nondegenerate");
  return mode == LebesgueMode::exact ? exact_lebesgue(c) : sampled_lebesgue(c, sample);
}

Modulus uniform_modulus(const Expr& f, double a, double b, double eps, std::size_t grid) {
  if (!(eps > 0)) throw UsageError("uniform_modulus: eps must be positive");
  if (!(a < b)) throw UsageError("uniform_modulus: need a < b");
  if (grid < 16) throw UsageError("uniform_modulus: grid must be at least 16");
  const double half = eps / 2;
  const Program p(f);

  auto window = [&](double t) {
    const double ft = p(t);
    auto holds = [&](double r) {
      for (int i = 1; i <= 32; ++i) {
        for (const double x : {t - r * i / 32, t + r * i / 32}) {
          if (x < a || x > b) continue;
          if (!(std::fabs(p(x) - ft) < half)) return false;
        }
      }
      return true;
    };
    double bad = b - a;
    if (holds(bad)) return bad;
    double good = bad / 2;
    while (!holds(good)) {
      bad = good;
      good /= 2;
      if (good < 1e-14) {
        throw MathError(Failure::window_collapse, "no window of radius 1e-14 keeps |f - f(t)| < eps/2 at t = " +
                                                      std::to_string(t));
      }
    }
    for (int i = 0; i < 30; ++i) {
      const double mid = good + (bad - good) / 2;
      if (holds(mid)) {
        good = mid;
      } else {
        bad = mid;
      }
    }
    return good;
  };

  for (std::size_t m = grid;; m *= 2) {
    if (m > (std::size_t{1} << 18)) {
      throw MathError(Failure::window_collapse, "windows still fail to cover [a, b] with " + std::to_string(m) +
                                                    " centres");
    }
    std::vector<OpenInterval> pieces;
    pieces.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double t = i + 1 == m ? b : a + static_cast<double>(i) * (b - a) / static_cast<double>(m - 1);
      const double r = window(t);
      pieces.emplace_back(t - r, t + r);
    }
    const OpenCover cover(Interval(a, b), std::move(pieces));
    if (cover.covered()) {
      const LebesgueNumber l = exact_lebesgue(cover);
      return {l.delta, m, l.capped};
    }
  }
}

namespace {

StepApproximation build_steps(const Expr& f, double a, double b, double delta, bool single) {
  const std::size_t n = single ? 1 : cells_for_width(a, b, delta);
  if (n > 10'000'000) throw MathError(Failure::window_collapse, "delta needs more than 10^7 cells");
  Partition part = uniform_partition(a, b, n);
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = eval(f, part.nodes()[k]);
  StepFunction phi(std::move(part), std::move(values));

  double err = 0;
  const auto& x = phi.partition().nodes();
  for (std::size_t k = 0; k < n; ++k) {
    for (int i = 0; i <= 10; ++i) {
      const double t = i == 10 ? x[k + 1] : x[k] + i * (x[k + 1] - x[k]) / 10;
      err = std::max(err, std::fabs(eval(f, t) - phi(t)));
    }
  }
  return {std::move(phi), delta, err};
}

}  // namespace

StepApproximation step_approximation(const Expr& f, double a, double b, double eps) {
  const Modulus m = uniform_modulus(f, a, b, eps);
  return build_steps(f, a, b, m.delta, m.capped);
}

StepApproximation step_approximation(const Expr& f, double a, double b, double eps, double delta) {
  if (!(eps > 0)) throw UsageError("step_approximation: eps must be positive");
  if (!(a < b)) throw UsageError("step_approximation: need a < b");
  if (!(delta > 0)) throw UsageError("step_approximation: delta must be positive");
  return build_steps(f, a, b, delta, false);
}

}  // namespace fc
