#include "fc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "fc/error.hpp"
#include "fc/random.hpp"

namespace fc {

namespace {

void check_schedule(const LimitSchedule& s, double tol) {
  if (!(tol > 0)) throw UsageError("limit: tol must be positive");
  if (!(s.delta0 > 0)) throw UsageError("limit: delta0 must be positive");
  if (!(s.shrink > 0 && s.shrink < 1)) throw UsageError("limit: shrink must lie in (0, 1)");
  if (s.steps < 1 || s.samples < 1) throw UsageError("limit: steps and samples must be positive");
}

struct Step {
  double estimate;
  double spread;
  double left = 0;
  double right = 0;
  double left_spread = 0;
  double right_spread = 0;
};

struct SideSamples {
  double nearest;
  double lo;
  double hi;
};

SideSamples sample_side(const RealFunction& f, double c, double delta, unsigned samples, double sign) {
  SideSamples out{0, std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (unsigned i = 1; i <= samples; ++i) {
    const double x = c + sign * delta * i / (samples + 1);
    const double v = f(x);
    if (i == 1) out.nearest = v;
    if (std::isnan(v)) {
      out.lo = -std::numeric_limits<double>::infinity();
      out.hi = std::numeric_limits<double>::infinity();
    } else {
      out.lo = std::min(out.lo, v);
      out.hi = std::max(out.hi, v);
    }
  }
  return out;
}

LimitReport report_of(const Step& s, unsigned j, bool converged, LimitMode mode) {
  LimitReport r;
  r.estimate = s.estimate;
  r.spread = s.spread;
  r.converged = converged;
  r.step = j;
  if (mode != LimitMode::right) r.left = s.left;
  if (mode != LimitMode::left) r.right = s.right;
  return r;
}

}  // namespace

LimitReport limit(const RealFunction& f, double c, const LimitSchedule& sched, double tol) {
  check_schedule(sched, tol);
  const bool use_left = sched.mode != LimitMode::right;
  const bool use_right = sched.mode != LimitMode::left;
  std::vector<Step> steps;
  steps.reserve(sched.steps);

  for (unsigned j = 0; j < sched.steps; ++j) {
    const double delta = sched.delta0 * std::pow(sched.shrink, static_cast<double>(j));
    Step s{};
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    if (use_left) {
      const auto l = sample_side(f, c, delta, sched.samples, -1.0);
      s.left = l.nearest;
      s.left_spread = l.hi - l.lo;
      lo = std::min(lo, l.lo);
      hi = std::max(hi, l.hi);
    }
    if (use_right) {
      const auto r = sample_side(f, c, delta, sched.samples, 1.0);
      s.right = r.nearest;
      s.right_spread = r.hi - r.lo;
      lo = std::min(lo, r.lo);
      hi = std::max(hi, r.hi);
    }
    s.estimate = use_left && use_right ? (s.left + s.right) / 2 : (use_left ? s.left : s.right);
    s.spread = hi - lo;
    steps.push_back(s);
    if (j == 0) continue;

    const Step& p = steps[j - 1];
    if (use_left && use_right) {
      const bool left_settled = std::fabs(s.left - p.left) < tol && s.left_spread < tol;
      const bool right_settled = std::fabs(s.right - p.right) < tol && s.right_spread < tol;
      if (left_settled && right_settled && !(std::fabs(s.left - s.right) < tol)) {
        throw OneSidedMismatch(s.left, s.right);
      }
    }
    if (std::fabs(s.estimate - p.estimate) < tol && s.spread < tol) return report_of(s, j, true, sched.mode);
  }

  const std::size_t n = steps.size();
  if (n >= 4) {
    bool growing = true;
    for (std::size_t j = n - 3; j < n; ++j) growing = growing && steps[j].spread > steps[j - 1].spread;
    if (growing && steps.back().spread > steps.front().spread && steps.back().spread > tol) {
      throw MathError(Failure::divergence, "sample spread grew from " + std::to_string(steps.front().spread) +
                                               " to " + std::to_string(steps.back().spread));
    }
  }

  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const double drift = j == 0 ? std::numeric_limits<double>::infinity()
                                : std::fabs(steps[j].estimate - steps[j - 1].estimate);
    const double score = n == 1 ? steps[j].spread : std::max(steps[j].spread, drift);
    if (score < best_score) {
      best_score = score;
      best = j;
    }
  }
  return report_of(steps[best], static_cast<unsigned>(best), false, sched.mode);
}

LimitReport limit(const Expr& f, double c, const LimitSchedule& sched, double tol) {
  return limit(RealFunction([&f](double x) { return eval(f, x); }), c, sched, tol);
}

LimitReport derivative(const Expr& f, double c, const LimitSchedule& sched, double tol) {
  const double fc = eval(f, c);
  const RealFunction quotient = [&f, c, fc](double x) { return (eval(f, x) - fc) / (x - c); };
  LimitReport r = limit(quotient, c, sched, tol);

  std::optional<double> symbolic;
  try {
    symbolic = eval(differentiate(f), c);
  } catch (const DomainError&) {
  } catch (const MathError& e) {
    if (e.failure() != Failure::not_differentiable) throw;
  }
  if (symbolic && std::isfinite(*symbolic)) {
    const double gap = std::fabs(r.estimate - *symbolic);
    if (gap > 1e-4 * std::max(1.0, std::fabs(*symbolic))) {
      throw MathError(Failure::ill_conditioned, "numeric derivative " + std::to_string(r.estimate) +
                                                    " disagrees with symbolic " + std::to_string(*symbolic));
    }
  }
  return r;
}

Extremum extreme_point(const RealFunction& f, double a, double b, unsigned grid, unsigned refinements) {
  if (!(a <= b)) throw UsageError("extreme_point: need a <= b");
  if (grid < 2) throw UsageError("extreme_point: grid must be at least 2");
  Extremum best{a, f(a)};
  if (a == b) return best;
  const double cells = grid - 1;
  for (unsigned i = 1; i < grid; ++i) {
    const double x = i + 1 == grid ? b : a + i * (b - a) / cells;
    const double v = f(x);
    if (v > best.value || std::isnan(best.value)) best = {x, v};
  }
  double h = (b - a) / cells;
  for (unsigned r = 0; r < refinements; ++r) {
    const double lo = std::max(a, best.x - h);
    const double hi = std::min(b, best.x + h);
    h /= 10;
    const auto count = static_cast<unsigned>(std::ceil((hi - lo) / h - 1e-9));
    for (unsigned k = 0; k <= count; ++k) {
      const double x = k == count ? hi : lo + k * (hi - lo) / count;
      const double v = f(x);
      if (v > best.value || (v == best.value && x < best.x)) best = {x, v};
    }
  }
  return best;
}

Extremum extreme_point(const Expr& f, double a, double b, unsigned grid, unsigned refinements) {
  return extreme_point(RealFunction([&f](double x) { return eval(f, x); }), a, b, grid, refinements);
}

// ---------------------------------------------------------------------------
// Witness finders

namespace {

constexpr unsigned kGrid = 1001;

struct Slope {
  RealFunction df;
  bool symbolic;
};

Slope slope_of(const Expr& f) {
  try {
    Expr d = differentiate(f);
    return {[d](double x) { return eval(d, x); }, true};
  } catch (const MathError& e) {
    if (e.failure() != Failure::not_differentiable) throw;
  }
  return {[f](double x) {
            const double h = 1e-6 * std::max(1.0, std::fabs(x));
            return (eval(f, x + h) - eval(f, x - h)) / (2 * h);
          },
          false};
}

double polish(const RealFunction& df, double lo, double hi) {
  double flo = df(lo);
  if (flo == 0.0) return lo;
  const double fhi = df(hi);
  if (fhi == 0.0) return hi;
  for (int i = 0; i < 2000; ++i) {
    const double m = lo + (hi - lo) / 2;
    if (m == lo || m == hi) break;
    const double fm = df(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (flo < 0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
    }
  }
  return std::fabs(df(lo)) <= std::fabs(df(hi)) ? lo : hi;
}

bool opposite(double u, double v) { return (u < 0 && v > 0) || (u > 0 && v < 0); }

// A zero of df near c, first inside [c-h, c+h], then by a finer scan.
std::optional<double> critical_near(const RealFunction& df, double c, double h, double a, double b) {
  if (df(c) == 0.0) return c;
  const double lo = std::max(a, c - h);
  const double hi = std::min(b, c + h);
  if (opposite(df(lo), df(hi))) return polish(df, lo, hi);

  const double L = std::max(a, c - 2 * h);
  const double H = std::min(b, c + 2 * h);
  constexpr int pieces = 1000;
  std::optional<double> found;
  double found_dist = std::numeric_limits<double>::infinity();
  double x0 = L;
  double d0 = df(L);
  for (int i = 1; i <= pieces; ++i) {
    const double x1 = i == pieces ? H : L + i * (H - L) / pieces;
    const double d1 = df(x1);
    if (d0 == 0.0 || opposite(d0, d1)) {
      const double dist = std::fabs((x0 + x1) / 2 - c);
      if (dist < found_dist) {
        found_dist = dist;
        found = d0 == 0.0 ? x0 : polish(df, x0, x1);
      }
    }
    x0 = x1;
    d0 = d1;
  }
  return found;
}

Witness rolle_impl(const Expr& f, double a, double b, double tol, bool check_endpoints) {
  if (!(tol > 0)) throw UsageError("rolle_witness: tol must be positive");
  if (!(a < b)) throw UsageError("rolle_witness: need a < b");
  const double fa = eval(f, a);
  const double fb = eval(f, b);
  const double scale = std::max(1.0, std::fabs(fa));
  if (check_endpoints && std::fabs(fa - fb) > tol * scale) {
    throw MathError(Failure::endpoint_mismatch, "f(a) = " + std::to_string(fa) + " but f(b) = " + std::to_string(fb));
  }
  const Slope s = slope_of(f);
  const double accept = s.symbolic ? tol : 100 * tol;

  const Extremum top = extreme_point(f, a, b, kGrid, 3);
  const Extremum bottom = extreme_point(RealFunction([&f](double x) { return -eval(f, x); }), a, b, kGrid, 3);
  if (top.value + bottom.value <= tol * scale) {
    const double mid = a + (b - a) / 2;
    return {mid, std::fabs(s.df(mid)), "flat: f varies by at most tol, midpoint returned"};
  }

  std::vector<std::pair<double, double>> candidates;  // (deviation from f(a), x)
  if (top.x > a && top.x < b) candidates.emplace_back(std::fabs(top.value - fa), top.x);
  if (bottom.x > a && bottom.x < b) candidates.emplace_back(std::fabs(-bottom.value - fa), bottom.x);
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& u, const auto& v) { return u.first > v.first; });

  const double h = (b - a) / (kGrid - 1);
  double best_x = a + (b - a) / 2;
  double best_r = std::numeric_limits<double>::infinity();
  for (const auto& [dev, x] : candidates) {
    const double rx = std::fabs(s.df(x));
    if (rx < best_r) {
      best_r = rx;
      best_x = x;
    }
    if (const auto c = critical_near(s.df, x, h, a, b); c && *c > a && *c < b) {
      const double rc = std::fabs(s.df(*c));
      if (rc < best_r) {
        best_r = rc;
        best_x = *c;
      }
    }
    if (best_r <= accept) return {best_x, best_r, s.symbolic ? "" : "numeric derivative"};
  }
  throw MathError(Failure::no_witness, "best interior candidate " + std::to_string(best_x) + " has |f'| = " +
                                           std::to_string(best_r));
}

}  // namespace

Witness rolle_witness(const Expr& f, double a, double b, double tol) { return rolle_impl(f, a, b, tol, true); }

Witness mvt_witness(const Expr& f, double a, double b, double tol) {
  if (!(a < b)) throw UsageError("mvt_witness: need a < b");
  const double slope = (eval(f, b) - eval(f, a)) / (b - a);
  const Expr g = f - Expr::constant(slope) * Expr::variable();
  Witness w = rolle_impl(g, a, b, tol, false);
  const Slope s = slope_of(f);
  w.residual = std::fabs(s.df(w.point) - slope);
  if (w.residual > (s.symbolic ? tol : 100 * tol) && w.diagnostic.rfind("flat", 0) != 0) {
    throw MathError(Failure::no_witness, "|f'(c) - slope| = " + std::to_string(w.residual));
  }
  return w;
}

Witness emvt_witness(const Expr& f, const Expr& g, double a, double b, double tol) {
  if (!(a < b)) throw UsageError("emvt_witness: need a < b");
  const Slope dg = slope_of(g);
  double first = 0;
  for (unsigned i = 1; i + 1 < kGrid; ++i) {
    const double x = a + i * (b - a) / (kGrid - 1);
    const double v = dg.df(x);
    if (v == 0.0 || (first != 0.0 && opposite(first, v))) {
      throw MathError(Failure::derivative_vanishes, "g' vanishes near x = " + std::to_string(x));
    }
    if (first == 0.0) first = v;
  }
  const double fa = eval(f, a);
  const double ga = eval(g, a);
  const double df = eval(f, b) - fa;
  const double dgab = eval(g, b) - ga;
  if (dgab == 0.0) throw MathError(Failure::derivative_vanishes, "g(b) = g(a), so g' must vanish somewhere");

  const Expr F = Expr::constant(dgab) * (f - fa) - (g - ga) * Expr::constant(df);
  Witness w = rolle_impl(F, a, b, tol, false);
  const Slope dfx = slope_of(f);
  const double ratio = df / dgab;
  w.residual = std::fabs(dfx.df(w.point) / dg.df(w.point) - ratio);
  const bool symbolic = dfx.symbolic && dg.symbolic;
  if (w.residual > (symbolic ? tol : 100 * tol)) {
    throw MathError(Failure::no_witness, "|f'(c)/g'(c) - ratio| = " + std::to_string(w.residual));
  }
  return w;
}

TaylorReport taylor(const Expr& f, double a, unsigned n, double x, double tol) {
  if (!(x > a)) throw UsageError("taylor: need x > a");
  if (!(tol > 0)) throw UsageError("taylor: tol must be positive");
  std::vector<Expr> d{f};
  for (unsigned k = 1; k <= n + 1; ++k) d.push_back(differentiate(d.back()));

  TaylorReport r{};
  const double h = x - a;
  double factorial = 1;
  r.value = 0;
  for (unsigned k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    r.coefficients.push_back(eval(d[k], a) / factorial);
    r.value += r.coefficients.back() * ipow(h, static_cast<int>(k));
  }
  factorial *= n + 1;
  const double hn = ipow(h, static_cast<int>(n + 1));
  r.rho = factorial / hn * (eval(f, x) - r.value);

  const Expr& top = d[n + 1];
  auto g = [&](double t) { return eval(top, t) - r.rho; };
  constexpr unsigned cells = 1000;
  double prev_t = a;
  double prev_g = 0;
  double closest = a + h / 2;
  double closest_g = std::numeric_limits<double>::infinity();
  for (unsigned i = 1; i < cells; ++i) {
    const double t = a + i * h / cells;
    const double gt = g(t);
    if (gt == 0.0) {
      r.witness = t;
      break;
    }
    if (i > 1 && opposite(prev_g, gt)) {
      r.witness = polish(g, prev_t, t);
      break;
    }
    if (std::fabs(gt) < closest_g) {
      closest_g = std::fabs(gt);
      closest = t;
    }
    prev_t = t;
    prev_g = gt;
  }
  if (!r.witness && closest_g <= tol) r.witness = closest;

  r.remainder = (r.witness ? eval(top, *r.witness) : r.rho) / factorial * hn;
  return r;
}

PolynomialCheck polynomial_check(const Expr& f, double a, double b, unsigned n, unsigned samples, double tol) {
  if (!(a <= b)) throw UsageError("polynomial_check: need a <= b");
  if (samples < 1) throw UsageError("polynomial_check: samples must be positive");
  const Expr top = differentiate(f, n + 1);

  const unsigned m = n + 1;
  std::vector<double> t(m);
  std::vector<double> ft(m);
  std::vector<double> w(m, 1.0);
  for (unsigned j = 0; j < m; ++j) {
    t[j] = (a + b) / 2 + (b - a) / 2 * std::cos((2.0 * j + 1) * std::numbers::pi / (2.0 * m));
    ft[j] = eval(f, t[j]);
  }
  for (unsigned j = 0; j < m; ++j) {
    for (unsigned k = 0; k < m; ++k) {
      if (k != j) w[j] /= t[j] - t[k];
    }
  }
  auto interpolate = [&](double x) {
    double num = 0;
    double den = 0;
    for (unsigned j = 0; j < m; ++j) {
      if (x == t[j]) return ft[j];
      const double q = w[j] / (x - t[j]);
      num += q * ft[j];
      den += q;
    }
    return num / den;
  };

  PolynomialCheck out{true, a, 0, 0};
  double worst = -1;
  for (unsigned i = 0; i < samples; ++i) {
    const double x = samples == 1 ? a + (b - a) / 2 : (i + 1 == samples ? b : a + i * (b - a) / (samples - 1));
    const double dv = std::fabs(eval(top, x));
    const double fx = eval(f, x);
    const double iv = std::fabs(interpolate(x) - fx);
    out.derivative_max = std::max(out.derivative_max, dv);
    out.interpolation_max = std::max(out.interpolation_max, iv);
    if (dv > tol || iv > tol * (1 + std::fabs(fx))) out.ok = false;
    const double score = std::max(dv, iv);
    if (score > worst) {
      worst = score;
      out.worst_x = x;
    }
  }
  return out;
}

const char* to_string(Shape s) noexcept {
  switch (s) {
    case Shape::convex: return "convex";
    case Shape::increasing: return "increasing";
    case Shape::constant: return "constant";
  }
  return "?";
}

ShapeResult shape_check(const Expr& f, double a, double b, Shape kind, unsigned samples, double tol,
                        std::uint64_t seed) {
  if (samples < 3) throw UsageError("shape_check: need at least 3 samples");
  if (!(a <= b)) throw UsageError("shape_check: need a <= b");
  Rng rng(seed);
  switch (kind) {
    case Shape::convex:
      for (unsigned i = 0; i < samples; ++i) {
        double p[3] = {rng.uniform(a, b), rng.uniform(a, b), rng.uniform(a, b)};
        std::sort(p, p + 3);
        const auto [c, t, x] = p;
        if (!(c < x)) continue;
        const double fc = eval(f, c);
        const double chord = fc + (t - c) * (eval(f, x) - fc) / (x - c);
        if (eval(f, t) > chord + tol) return {false, {c, t, x}};
      }
      return {true, {}};
    case Shape::increasing:
      for (unsigned i = 0; i < samples; ++i) {
        double c = rng.uniform(a, b);
        double x = rng.uniform(a, b);
        if (x < c) std::swap(c, x);
        if (eval(f, c) > eval(f, x) + tol) return {false, {c, x}};
      }
      return {true, {}};
    case Shape::constant: {
      double lo_x = a;
      double hi_x = a;
      double lo = eval(f, a);
      double hi = lo;
      for (unsigned i = 1; i < samples; ++i) {
        const double x = i + 1 == samples ? b : a + i * (b - a) / (samples - 1);
        const double v = eval(f, x);
        if (v < lo) {
          lo = v;
          lo_x = x;
        }
        if (v > hi) {
          hi = v;
          hi_x = x;
        }
      }
      if (hi - lo <= tol) return {true, {}};
      return {false, {lo_x, hi_x}};
    }
  }
  return {true, {}};
}

PiecewiseLinear::PiecewiseLinear(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  if (nodes_.empty()) throw UsageError("piecewise_linear: need at least one node");
  if (nodes_.size() != values_.size()) throw UsageError("piecewise_linear: nodes and values differ in length");
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i - 1] < nodes_[i])) throw UsageError("piecewise_linear: nodes must be strictly increasing");
  }
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= nodes_.front()) return values_.front();
  if (x > nodes_.back()) return 0.0;
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  const auto n = static_cast<std::size_t>(it - nodes_.begin());
  if (*it == x) return values_[n];
  const double t = (x - nodes_[n - 1]) / (nodes_[n] - nodes_[n - 1]);
  return values_[n - 1] + t * (values_[n] - values_[n - 1]);
}

}  // namespace fc
