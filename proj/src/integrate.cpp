#include "fc/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fc/calculus.hpp"
#include "fc/error.hpp"
#include "fc/random.hpp"
#include "fc/suprema.hpp"

namespace fc {

namespace {

// Compensated (Neumaier) summation; every integral here goes through it so
// that different routes to the same sum agree bit for bit.
class Sum {
 public:
  void add(double x) {
    const double t = s_ + x;
    if (std::fabs(s_) >= std::fabs(x)) {
      c_ += (s_ - t) + x;
    } else {
      c_ += (x - t) + s_;
    }
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0;
  double c_ = 0;
};

void same_interval(const StepFunction& phi, const StepFunction& psi) {
  if (phi.a() != psi.a() || phi.b() != psi.b()) throw UsageError("step functions live on different intervals");
}

}  // namespace

double step_integral(const StepFunction& phi) {
  const auto& x = phi.partition().nodes();
  Sum s;
  for (std::size_t k = 0; k < phi.values().size(); ++k) s.add(phi.values()[k] * (x[k + 1] - x[k]));
  return s.value();
}

StepFunction step_reexpress(const StepFunction& phi, const Partition& omega) {
  if (omega.a() != phi.a() || omega.b() != phi.b()) throw UsageError("step_reexpress: endpoints differ");
  const auto& w = omega.nodes();
  for (const double x : phi.partition().nodes()) {
    if (!std::binary_search(w.begin(), w.end(), x)) {
      throw UsageError("step_reexpress: node " + std::to_string(x) + " is missing from the new partition");
    }
  }
  std::vector<double> values(omega.cells());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = phi(w[k] + (w[k + 1] - w[k]) / 2);
  return StepFunction(omega, std::move(values));
}

StepFunction step_add(const StepFunction& phi, const StepFunction& psi) {
  same_interval(phi, psi);
  const Partition common = refine(phi.partition(), psi.partition());
  StepFunction p = step_reexpress(phi, common);
  const StepFunction q = step_reexpress(psi, common);
  std::vector<double> values = p.values();
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += q.values()[k];
  return StepFunction(common, std::move(values));
}

StepFunction step_scale(const StepFunction& phi, double c) {
  std::vector<double> values = phi.values();
  for (double& v : values) v *= c;
  return StepFunction(phi.partition(), std::move(values));
}

StepFunction step_negate(const StepFunction& phi) {
  std::vector<double> values = phi.values();
  for (double& v : values) v = -v;
  return StepFunction(phi.partition(), std::move(values));
}

StepFunction step_combine(const StepFunction& phi, const StepFunction& psi, StepOp op, double c) {
  switch (op) {
    case StepOp::add: return step_add(phi, psi);
    case StepOp::scale: return step_scale(phi, c);
    case StepOp::negate: return step_negate(phi);
  }
  return phi;
}

std::pair<StepFunction, StepFunction> step_split(const StepFunction& phi, double c) {
  if (!(c >= phi.a() && c <= phi.b())) throw UsageError("step_split: point lies outside [a, b]");
  const auto& x = phi.partition().nodes();
  const auto& v = phi.values();
  std::vector<double> ln;
  std::vector<double> rn{c};
  for (const double xi : x) {
    if (xi < c) ln.push_back(xi);
  }
  ln.push_back(c);
  std::size_t first_right = x.size();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > c) {
      if (first_right == x.size()) first_right = i;
      rn.push_back(x[i]);
    }
  }
  std::vector<double> lv(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(ln.size() - 1));
  std::vector<double> rv;
  for (std::size_t i = 0; i + 1 < rn.size(); ++i) rv.push_back(v[first_right - 1 + i]);
  return {StepFunction(Partition(std::move(ln)), std::move(lv)), StepFunction(Partition(std::move(rn)), std::move(rv))};
}

// ---------------------------------------------------------------------------
// Sampled sums on uniform partitions

namespace {

struct LevelSums {
  double lower;
  double upper;
  double left;
  double right;
  double midpoint;
  double random;
};

// Cell k is [x_k, x_{k+1}] with x_k computed exactly as uniform_partition
// does. Samples x_k + i h / m, i < m, plus x_{k+1} shared with the next cell.
LevelSums level_sums(const Program& p, double a, double b, std::size_t n, std::size_t m, bool choices,
                     std::uint64_t seed) {
  constexpr std::size_t chunk = 256;
  const double width = b - a;
  auto node = [&](std::size_t k) {
    return k == n ? b : a + static_cast<double>(k) * width / static_cast<double>(n);
  };
  std::vector<double> xs(chunk * m + 1 + (choices ? chunk : 0));
  std::vector<double> ys(xs.size());
  std::vector<double> h(chunk);
  Sum lower, neg_upper, left, right, mid, rnd;

  for (std::size_t k0 = 0; k0 < n; k0 += chunk) {
    const std::size_t cnt = std::min(chunk, n - k0);
    double xk = node(k0);
    for (std::size_t j = 0; j < cnt; ++j) {
      const double xk1 = node(k0 + j + 1);
      h[j] = xk1 - xk;
      for (std::size_t i = 0; i < m; ++i) xs[j * m + i] = xk + static_cast<double>(i) * h[j] / static_cast<double>(m);
      if (choices) xs[cnt * m + 1 + j] = std::min(xk + mix_unit(seed, k0 + j) * h[j], xk1);
      xk = xk1;
    }
    xs[cnt * m] = xk;
    const std::size_t used = cnt * m + 1 + (choices ? cnt : 0);
    p.eval(std::span<const double>(xs.data(), used), std::span<double>(ys.data(), used));

    for (std::size_t j = 0; j < cnt; ++j) {
      const double* v = ys.data() + j * m;
      double lo = v[0];
      double hi = v[0];
      for (std::size_t i = 1; i <= m; ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
      }
      lower.add(lo * h[j]);
      neg_upper.add(-hi * h[j]);
      if (choices) {
        left.add(v[0] * h[j]);
        right.add(v[m] * h[j]);
        mid.add(v[m / 2] * h[j]);
        rnd.add(ys[cnt * m + 1 + j] * h[j]);
      }
    }
  }
  return {lower.value(), -neg_upper.value(), left.value(), right.value(), mid.value(), rnd.value()};
}

}  // namespace

DarbouxBounds darboux_bounds(const Expr& f, double a, double b, std::size_t n, std::size_t m) {
  if (n < 1 || m < 1) throw UsageError("darboux_bounds: n and m must be positive");
  if (!(a <= b)) throw UsageError("darboux_bounds: need a <= b");
  if (a == b) return {0, 0};
  const LevelSums s = level_sums(Program(f), a, b, n, m, false, 0);
  return {s.lower, s.upper};
}

double ChoiceFunction::pick(std::size_t k, double lo, double hi) const {
  switch (kind) {
    case Kind::left: return lo;
    case Kind::right: return hi;
    case Kind::midpoint: return lo + (hi - lo) / 2;
    case Kind::random: return std::min(lo + mix_unit(seed, k) * (hi - lo), hi);
    case Kind::explicit_points: {
      const double xi = points.at(k);
      if (!(xi >= lo && xi <= hi)) {
        throw UsageError("choice point " + std::to_string(xi) + " lies outside cell " + std::to_string(k));
      }
      return xi;
    }
  }
  return lo;
}

double riemann_sum(const Expr& f, const Partition& p, const ChoiceFunction& choice) {
  if (choice.kind == ChoiceFunction::Kind::explicit_points && choice.points.size() != p.cells()) {
    throw UsageError("riemann_sum: " + std::to_string(choice.points.size()) + " choice points for " +
                     std::to_string(p.cells()) + " cells");
  }
  const auto& x = p.nodes();
  Sum s;
  for (std::size_t k = 0; k < p.cells(); ++k) s.add(eval(f, choice.pick(k, x[k], x[k + 1])) * (x[k + 1] - x[k]));
  return s.value();
}

IntegralCertificate riemann_integral(const Expr& f, double a, double b, double tol, std::uint64_t seed) {
  if (!(tol > 0)) throw UsageError("riemann_integral: tol must be positive");
  if (!(a <= b)) throw UsageError("riemann_integral: need a <= b");
  IntegralCertificate cert;
  if (a == b) {
    cert.levels.push_back({0, 0, 0, 0, 0, 0, 0, 0});
    cert.converged = true;
    return cert;
  }
  const Program p(f);
  for (unsigned j = 4; j <= 24; ++j) {
    const std::size_t n = std::size_t{1} << j;
    const LevelSums s = level_sums(p, a, b, n, 8, true, seed);
    cert.levels.push_back({j, n, s.lower, s.upper, s.left, s.right, s.midpoint, s.random});
    if (!std::isfinite(s.lower) || !std::isfinite(s.upper)) {
      throw MathError(Failure::level_cap, "non-finite sums at level " + std::to_string(j));
    }
    const auto inside = [&](double v) { return v >= s.lower - tol && v <= s.upper + tol; };
    if (s.upper - s.lower < tol && inside(s.left) && inside(s.right) && inside(s.midpoint) && inside(s.random)) {
      cert.value = s.lower + (s.upper - s.lower) / 2;
      cert.converged = true;
      return cert;
    }
  }
  const auto& last = cert.levels.back();
  throw MathError(Failure::level_cap, "bounds still " + std::to_string(last.upper - last.lower) +
                                          " apart at 2^24 cells; f may be unbounded or wildly oscillating");
}

AdditivityCheck integral_additivity_check(const Expr& f, double a, double c, double b, double tol) {
  if (!(a <= c && c <= b)) throw UsageError("integral_additivity_check: need a <= c <= b");
  AdditivityCheck r{};
  r.whole = riemann_integral(f, a, b, tol).value;
  r.left = riemann_integral(f, a, c, tol).value;
  r.right = riemann_integral(f, c, b, tol).value;
  r.ok = std::fabs(r.whole - r.left - r.right) <= 3 * tol;
  return r;
}

bool bounds_check(const Expr& f, double a, double b, double m, double M, double tol) {
  if (!(a <= b)) throw UsageError("bounds_check: need a <= b");
  constexpr int samples = 1001;
  for (int i = 0; i < samples; ++i) {
    const double x = i + 1 == samples ? b : a + i * (b - a) / (samples - 1);
    const double v = eval(f, x);
    if (v < m || v > M) {
      throw MathError(Failure::precondition, "f(" + std::to_string(x) + ") = " + std::to_string(v) +
                                                 " lies outside [m, M]");
    }
  }
  const double value = riemann_integral(f, a, b, tol).value;
  return m * (b - a) - tol <= value && value <= M * (b - a) + tol;
}

Antiderivative::Antiderivative(Expr f, double a, double tol)
    : f_(std::move(f)), a_(a), tol_(tol), memo_(std::make_shared<Memo>()) {
  if (!(tol > 0)) throw UsageError("antiderivative: tol must be positive");
}

double Antiderivative::operator()(double x) const {
  {
    std::lock_guard lock(memo_->mutex);
    if (const auto it = memo_->values.find(x); it != memo_->values.end()) return it->second;
  }
  const double v = x >= a_ ? riemann_integral(f_, a_, x, tol_).value : -riemann_integral(f_, x, a_, tol_).value;
  std::lock_guard lock(memo_->mutex);
  memo_->values.emplace(x, v);
  return v;
}

Antiderivative antiderivative(const Expr& f, double a, double tol) { return Antiderivative(f, a, tol); }

Ftc2Check ftc2_check(const Expr& F, double a, double b, double tol) {
  Ftc2Check r{};
  r.integral = riemann_integral(differentiate(F), a, b, tol).value;
  r.difference = eval(F, b) - eval(F, a);
  r.ok = std::fabs(r.integral - r.difference) <= 3 * tol;
  return r;
}

MeanValue imvt_witness(const Expr& f, double a, double b, double tol, double integral_tol) {
  if (!(a < b)) throw UsageError("imvt_witness: need a < b");
  if (!(tol > 0)) throw UsageError("imvt_witness: tol must be positive");
  MeanValue r{};
  r.mean = riemann_integral(f, a, b, integral_tol).value / (b - a);

  const Extremum top = extreme_point(f, a, b);
  const Extremum bottom = extreme_point(RealFunction([&f](double x) { return -eval(f, x); }), a, b);
  const double hi = top.value;
  const double lo = -bottom.value;
  if (hi - lo <= tol) {
    r.xi = a + (b - a) / 2;
    r.residual = std::fabs(eval(f, r.xi) - r.mean);
    r.diagnostic = "flat: f varies by at most tol, midpoint returned";
    return r;
  }
  if (r.mean <= lo || r.mean >= hi) {
    const bool low = std::fabs(lo - r.mean) <= std::fabs(hi - r.mean);
    r.xi = low ? bottom.x : top.x;
    r.residual = std::fabs(eval(f, r.xi) - r.mean);
    r.diagnostic = "no bracket: the mean lies outside the sampled range of f";
    return r;
  }
  const RootResult root = ivt_root(f, bottom.x, top.x, r.mean, std::numeric_limits<double>::min());
  r.xi = root.root;
  r.residual = std::fabs(eval(f, r.xi) - r.mean);
  if (r.residual > tol) {
    throw MathError(Failure::no_witness, "|f(xi) - mean| = " + std::to_string(r.residual) + " exceeds tol");
  }
  return r;
}

AdtCheck adt_check(const Expr& F, const Expr& G, double a, double b, std::size_t samples, double tol) {
  if (!(a <= b)) throw UsageError("adt_check: need a <= b");
  if (samples < 2) throw UsageError("adt_check: need at least 2 samples");
  const Expr dF = differentiate(F);
  const Expr dG = differentiate(G);
  double worst = 0;
  double worst_x = a;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double scale = 0;
  Sum total;
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = i + 1 == samples ? b : a + static_cast<double>(i) * (b - a) / static_cast<double>(samples - 1);
    const double fp = eval(dF, x);
    const double gap = std::fabs(fp - eval(dG, x));
    if (gap / (1 + std::fabs(fp)) > worst) {
      worst = gap / (1 + std::fabs(fp));
      worst_x = x;
    }
    const double fx = eval(F, x);
    const double gx = eval(G, x);
    const double d = fx - gx;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    scale = std::max({scale, std::fabs(fx), std::fabs(gx)});
    total.add(d);
  }
  if (worst > tol) {
    throw MathError(Failure::precondition, "F' and G' differ at x = " + std::to_string(worst_x) +
                                               " (relative gap " + std::to_string(worst) + ")");
  }
  return {hi - lo <= tol * (1 + scale), total.value() / static_cast<double>(samples), hi - lo};
}

}  // namespace fc
