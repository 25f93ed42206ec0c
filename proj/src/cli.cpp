#include "fc/cli.hpp"

#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>

#include "fc/calculus.hpp"
#include "fc/cover.hpp"
#include "fc/error.hpp"
#include "fc/expr.hpp"
#include "fc/graph.hpp"
#include "fc/integrate.hpp"
#include "fc/interval.hpp"
#include "fc/sequences.hpp"
#include "fc/suprema.hpp"

namespace fc::cli {

const std::vector<Command>& registry() {
  static const std::vector<Command> commands = {
      {"parse", {"parse", "to_string"}},
      {"eval", {"eval"}},
      {"deriv", {"differentiate", "derivative"}},
      {"compose", {"compose"}},
      {"limit", {"limit"}},
      {"sup", {"supremum", "sup_witnesses"}},
      {"cut", {"cut_point"}},
      {"root", {"ivt_root"}},
      {"affine", {"affine_map"}},
      {"extremum", {"extreme_point"}},
      {"rolle", {"rolle_witness"}},
      {"mvt", {"mvt_witness"}},
      {"emvt", {"emvt_witness"}},
      {"taylor", {"taylor"}},
      {"polycheck", {"polynomial_check"}},
      {"shape", {"shape_check"}},
      {"pwl", {"PiecewiseLinear"}},
      {"cover-verify", {"verify_cover", "length_inequality"}},
      {"subcover", {"finite_subcover"}},
      {"lebesgue", {"lebesgue_number"}},
      {"modulus", {"uniform_modulus"}},
      {"stepapprox", {"step_approximation"}},
      {"stepint", {"step_integral"}},
      {"stepop", {"step_combine", "step_add", "step_scale", "step_negate", "step_split", "step_reexpress"}},
      {"darboux", {"darboux_bounds"}},
      {"riemann", {"riemann_sum"}},
      {"integrate", {"riemann_integral"}},
      {"additivity", {"integral_additivity_check"}},
      {"bounds", {"bounds_check"}},
      {"antideriv", {"antiderivative"}},
      {"ftc2", {"ftc2_check"}},
      {"imvt", {"imvt_witness"}},
      {"adt", {"adt_check"}},
      {"seq", {"check_monotone", "check_cauchy_window", "bound_prefix", "bw_extract", "monotone_limit",
               "divergence_witness", "cauchy_limit"}},
      {"interval", {"bisect", "uniform_partition", "cells_for_width", "refine", "shrink_to_point"}},
      {"graph path", {"path"}},
      {"graph scc", {"check_equivalence", "components"}},
      {"graph dot", {"export_dot"}},
      {"graph data", {"build", "graph_from_json", "graph_to_json"}},
  };
  return commands;
}

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  double tol = 1e-9;
  bool tol_given = false;
  std::uint64_t seed = 0;
  bool json = false;
  unsigned cap = 200;

  double tol_or(double fallback) const { return tol_given ? tol : fallback; }
};

struct Reply {
  Json result;
  Json diagnostics = Json::object();
  bool ok = true;
};

// Option storage shared by all subcommands; only one runs per invocation.
struct Options {
  std::string f, g, F, G, outer, inner, member, below, s;
  std::string nodes, values, nodes2, values2, onto, pieces, target, points;
  std::string kind = "convex", mode = "exact", choice = "midpoint", side = "two", op, var = "x";
  std::string from, to, without, map_from, map_to, lo_seq, hi_seq, box;
  double a = 0, b = 1, c = 0, x = 0, at = 0, k = 0, eps = 0.01, seed_point = 0, bound = 0;
  double in = 0, out = 1, lower = 0, upper = 0, scalar = 1, upper_bound = 0;
  std::optional<double> delta;
  unsigned n = 1, m = 8, order = 1, depth = 20, grid = 64, steps = 30, samples = 0;
  std::uint64_t count = 0, lo = 1, hi = 1000, budget = 1'000'000, sample = 64, witnesses = 0;
  bool minimum = false;
  bool certificate = false;
};

std::string number(double v) {
  char buf[40];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void render(const Json& v, std::string& out) {
  if (v.is_number_float()) {
    out += number(v.get<double>());
  } else if (v.is_string()) {
    out += v.get<std::string>();
  } else if (v.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      render(v[i], out);
    }
    out += ']';
  } else if (v.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [key, item] : v.items()) {
      if (!first) out += ", ";
      first = false;
      out += key + ": ";
      render(item, out);
    }
    out += '}';
  } else {
    out += v.dump();
  }
}

std::string text(const Json& result) {
  std::string out;
  if (result.is_object()) {
    for (const auto& [key, item] : result.items()) {
      out += key + ": ";
      render(item, out);
      out += '\n';
    }
  } else {
    render(result, out);
    out += '\n';
  }
  return out;
}

// Non-finite values have no JSON form; they travel as strings.
Json real(double v) { return std::isfinite(v) ? Json(v) : Json(number(v)); }

Json reals(const std::vector<double>& vs) {
  Json a = Json::array();
  for (const double v : vs) a.push_back(real(v));
  return a;
}

double to_double(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0;
  const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
  if (r.ec != std::errc() || r.ptr != s.data() + s.size()) {
    throw UsageError("bad number '" + std::string(s) + "' in " + std::string(what));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

std::vector<double> parse_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  if (s.empty()) return out;
  for (const auto part : split(s, ',')) out.push_back(to_double(part, what));
  return out;
}

std::pair<double, double> parse_pair(std::string_view s, std::string_view what) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw UsageError(std::string(what) + ": expected lo:hi, got '" + std::string(s) + "'");
  return {to_double(parts[0], what), to_double(parts[1], what)};
}

OpenCover parse_cover(const Options& o) {
  const auto [lo, hi] = parse_pair(o.target, "--target");
  std::vector<OpenInterval> pieces;
  if (!o.pieces.empty()) {
    for (const auto part : split(o.pieces, ',')) {
      const auto [a, b] = parse_pair(part, "--pieces");
      pieces.emplace_back(a, b);
    }
  }
  return OpenCover(Interval(lo, hi), std::move(pieces));
}

StepFunction parse_step(const std::string& nodes, const std::string& values) {
  return StepFunction(Partition(parse_list(nodes, "nodes")), parse_list(values, "values"));
}

Json step_json(const StepFunction& phi) {
  return Json{{"nodes", reals(phi.partition().nodes())}, {"values", reals(phi.values())}};
}

Expr parse_offset(std::string_view text, std::size_t base, char var) {
  try {
    return parse(text, var);
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()), base + e.offset());
  }
}

// "lhs < rhs" with one of <, <=, >, >= outside parentheses.
Predicate parse_predicate(std::string_view text) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth != 0 || (ch != '<' && ch != '>')) continue;
    const bool or_equal = i + 1 < text.size() && text[i + 1] == '=';
    const std::size_t rhs_at = i + (or_equal ? 2 : 1);
    const Expr lhs = parse_offset(text.substr(0, i), 0, 'x');
    const Expr rhs = parse_offset(text.substr(rhs_at), rhs_at, 'x');
    const bool less = ch == '<';
    return [lhs, rhs, less, or_equal](double x) {
      const double l = eval(lhs, x);
      const double r = eval(rhs, x);
      if (less) return or_equal ? l <= r : l < r;
      return or_equal ? l >= r : l > r;
    };
  }
  throw ParseError("expected a comparison such as 'x*x < 2'", text.size());
}

Sequence sequence_of(const std::string& text) {
  const Expr e = parse(text, 'n');
  return [e](std::uint64_t k) { return eval(e, static_cast<double>(k)); };
}

LimitSchedule schedule(const Options& o) {
  LimitSchedule s;
  if (o.side == "left") {
    s.mode = LimitMode::left;
  } else if (o.side == "right") {
    s.mode = LimitMode::right;
  } else if (o.side != "two") {
    throw UsageError("--side must be left, right or two");
  }
  if (o.delta) s.delta0 = *o.delta;
  s.steps = o.steps;
  return s;
}

Json limit_json(const LimitReport& r) {
  Json d{{"spread", real(r.spread)}, {"converged", r.converged}, {"step", r.step}};
  if (r.left) d["left"] = real(*r.left);
  if (r.right) d["right"] = real(*r.right);
  return d;
}

Json witness_reply(Reply& reply, const Witness& w) {
  reply.result = real(w.point);
  reply.diagnostics = Json{{"residual", real(w.residual)}};
  if (!w.diagnostic.empty()) reply.diagnostics["note"] = w.diagnostic;
  return reply.result;
}

using Handler = std::function<Reply(const Config&, const Options&)>;

struct Cli {
  CLI::App app{"Constructive real analysis toolkit", "fc"};
  Config config;
  Options o;
  std::map<const CLI::App*, Handler> handlers;

  CLI::App* add(CLI::App* parent, const std::string& name, const std::string& help, Handler h) {
    CLI::App* c = parent->add_subcommand(name, help);
    handlers[c] = std::move(h);
    return c;
  }
  CLI::App* add(const std::string& name, const std::string& help, Handler h) { return add(&app, name, help, std::move(h)); }

  static void interval_opts(CLI::App* c, Options& o) {
    c->add_option("--a", o.a, "left endpoint")->required();
    c->add_option("--b", o.b, "right endpoint")->required();
  }

  Cli();
};

Cli::Cli() {
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--tol", config.tol, "tolerance (default 1e-9; 1e-6 for limits and integrals)")
      ->check(CLI::PositiveNumber)
      ->each([this](const std::string&) { config.tol_given = true; });
  app.add_option("--seed", config.seed, "seed for randomised choices; FC_SEED overrides");
  app.add_option("--cap", config.cap, "iteration cap for bisection searches");
  app.add_flag("--json", config.json, "emit one JSON object with result and diagnostics");

  CLI::App* c = nullptr;

  c = add("parse", "parse an expression and print its canonical form", [](const Config&, const Options& o) {
    if (o.var.size() != 1) throw UsageError("--var must be a single letter");
    const Expr e = parse(o.f, o.var[0]);
    return Reply{to_string(e, o.var[0]), Json{{"size", e.size()}}};
  });
  c->add_option("--f", o.f, "expression")->required();
  c->add_option("--var", o.var, "variable letter");

  c = add("eval", "evaluate f at a point", [](const Config&, const Options& o) {
    return Reply{real(eval(parse(o.f), o.at))};
  });
  c->add_option("--f", o.f)->required();
  c->add_option("--at", o.at)->required();

  c = add("deriv", "symbolic derivative, optionally checked numerically at a point",
          [this](const Config& cfg, const Options& o) {
            const Expr f = parse(o.f);
            const Expr d = differentiate(f, o.order);
            Reply r{Json{{"derivative", to_string(d)}}};
            if (app.get_subcommand("deriv")->count("--at") != 0) {
              if (o.order != 1) throw UsageError("--at needs --order 1");
              const LimitReport n = derivative(f, o.at, LimitSchedule{}, cfg.tol_or(1e-6));
              r.result["symbolic"] = real(eval(d, o.at));
              r.result["numeric"] = real(n.estimate);
              r.diagnostics = limit_json(n);
              r.ok = n.converged;
            }
            return r;
          });
  c->add_option("--f", o.f)->required();
  c->add_option("--order", o.order)->check(CLI::PositiveNumber);
  c->add_option("--at", o.at);

  c = add("compose", "outer(inner(x))", [](const Config&, const Options& o) {
    return Reply{to_string(compose(parse(o.outer), parse(o.inner)))};
  });
  c->add_option("--outer", o.outer)->required();
  c->add_option("--inner", o.inner)->required();

  c = add("limit", "limit of f at a point", [](const Config& cfg, const Options& o) {
    const LimitReport r = limit(parse(o.f), o.at, schedule(o), cfg.tol_or(1e-6));
    return Reply{real(r.estimate), limit_json(r), r.converged};
  });
  c->add_option("--f", o.f)->required();
  c->add_option("--at", o.at)->required();
  c->add_option("--side", o.side, "left, right or two");
  c->add_option("--delta", o.delta, "initial window radius");
  c->add_option("--steps", o.steps, "number of shrinking steps");

  c = add("sup", "least upper bound of {x : predicate}", [](const Config& cfg, const Options& o) {
    const PredicateSet set{parse_predicate(o.member), o.seed_point, o.bound};
    const SupResult s = supremum(set, cfg.tol, cfg.cap);
    Reply r{real(s.value), Json{{"iterations", s.iterations}}};
    if (o.witnesses > 0) r.diagnostics["witnesses"] = reals(sup_witnesses(set, s.value, o.witnesses));
    return r;
  });
  c->add_option("--member", o.member, "membership test, e.g. \"x*x < 2\"")->required();
  c->add_option("--seed-point", o.seed_point, "a member of the set")->required();
  c->add_option("--bound", o.bound, "an upper bound of the set")->required();
  c->add_option("--witnesses", o.witnesses, "also list this many members approaching the supremum");

  c = add("cut", "boundary point of a cut", [](const Config& cfg, const Options& o) {
    return Reply{real(cut_point(Cut{parse_predicate(o.below), o.in, o.out}, cfg.tol, cfg.cap))};
  });
  c->add_option("--below", o.below, "lower side of the cut, e.g. \"x*x*x < 2\"")->required();
  c->add_option("--in", o.in, "a point on the lower side")->required();
  c->add_option("--out", o.out, "a point on the upper side")->required();

  c = add("root", "intermediate value root of f = k by bisection", [](const Config& cfg, const Options& o) {
    const RootResult r = ivt_root(parse(o.f), o.a, o.b, o.k, cfg.tol, cfg.cap);
    return Reply{real(r.root), Json{{"lo", real(r.lo)}, {"hi", real(r.hi)}, {"iterations", r.iterations}}};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--k", o.k, "target value");

  c = add("affine", "increasing affine map taking one interval onto another", [](const Config&, const Options& o) {
    const auto [a0, b0] = parse_pair(o.map_from, "--from");
    const auto [a, b] = parse_pair(o.map_to, "--to");
    return Reply{to_string(affine_map(a0, b0, a, b))};
  });
  c->add_option("--from", o.map_from, "lo:hi")->required();
  c->add_option("--to", o.map_to, "lo:hi")->required();

  c = add("extremum", "maximum (or minimum) of f on [a, b]", [](const Config&, const Options& o) {
    const Expr f = parse(o.f);
    if (o.minimum) {
      const Extremum e = extreme_point(RealFunction([&f](double x) { return -eval(f, x); }), o.a, o.b);
      return Reply{Json{{"x", real(e.x)}, {"value", real(-e.value)}}};
    }
    const Extremum e = extreme_point(f, o.a, o.b);
    return Reply{Json{{"x", real(e.x)}, {"value", real(e.value)}}};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_flag("--min", o.minimum, "find the minimum instead");

  c = add("rolle", "critical point of f on (a, b) when f(a) = f(b)", [](const Config& cfg, const Options& o) {
    Reply r;
    witness_reply(r, rolle_witness(parse(o.f), o.a, o.b, cfg.tol));
    return r;
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);

  c = add("mvt", "mean value point of f on (a, b)", [](const Config& cfg, const Options& o) {
    Reply r;
    witness_reply(r, mvt_witness(parse(o.f), o.a, o.b, cfg.tol));
    return r;
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);

  c = add("emvt", "Cauchy mean value point of f, g on (a, b)", [](const Config& cfg, const Options& o) {
    Reply r;
    witness_reply(r, emvt_witness(parse(o.f), parse(o.g), o.a, o.b, cfg.tol));
    return r;
  });
  c->add_option("--f", o.f)->required();
  c->add_option("--g", o.g)->required();
  interval_opts(c, o);

  c = add("taylor", "Taylor polynomial and Lagrange remainder", [](const Config& cfg, const Options& o) {
    const TaylorReport t = taylor(parse(o.f), o.a, o.n, o.x, cfg.tol);
    Json res{{"value", real(t.value)}, {"rho", real(t.rho)}, {"remainder", real(t.remainder)}};
    res["witness"] = t.witness ? real(*t.witness) : Json(nullptr);
    return Reply{res, Json{{"coefficients", reals(t.coefficients)}}};
  });
  c->add_option("--f", o.f)->required();
  c->add_option("--a", o.a, "expansion point")->required();
  c->add_option("--n", o.n, "degree")->required();
  c->add_option("--x", o.x, "evaluation point")->required();

  c = add("polycheck", "is f a polynomial of degree at most n on [a, b]", [](const Config& cfg, const Options& o) {
    const PolynomialCheck p = polynomial_check(parse(o.f), o.a, o.b, o.n, o.samples ? o.samples : 200, cfg.tol);
    return Reply{Json{{"polynomial", p.ok}},
                 Json{{"worst_x", real(p.worst_x)},
                      {"derivative_max", real(p.derivative_max)},
                      {"interpolation_max", real(p.interpolation_max)}},
                 p.ok};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--n", o.n)->required();
  c->add_option("--samples", o.samples);

  c = add("shape", "check convexity, monotonicity or constancy", [](const Config& cfg, const Options& o) {
    Shape kind = Shape::convex;
    if (o.kind == "increasing") {
      kind = Shape::increasing;
    } else if (o.kind == "constant") {
      kind = Shape::constant;
    } else if (o.kind != "convex") {
      throw UsageError("--kind must be convex, increasing or constant");
    }
    const ShapeResult s = shape_check(parse(o.f), o.a, o.b, kind, o.samples ? o.samples : 1000, cfg.tol, cfg.seed);
    Reply r{Json{{o.kind, s.ok}}, Json::object(), s.ok};
    if (!s.ok) r.diagnostics["counterexample"] = reals(s.counterexample);
    return r;
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--kind", o.kind, "convex, increasing or constant");
  c->add_option("--samples", o.samples);

  c = add("pwl", "evaluate the piecewise linear function through given points", [](const Config&, const Options& o) {
    const PiecewiseLinear p(parse_list(o.nodes, "--nodes"), parse_list(o.values, "--values"));
    return Reply{real(p(o.at))};
  });
  c->add_option("--nodes", o.nodes, "a1,a2,...")->required();
  c->add_option("--values", o.values, "c1,c2,...")->required();
  c->add_option("--at", o.at)->required();

  auto cover_opts = [this](CLI::App* cmd) {
    cmd->add_option("--target", o.target, "lo:hi")->required();
    cmd->add_option("--pieces", o.pieces, "lo:hi,lo:hi,...")->required();
  };

  c = add("cover-verify", "does a finite union of open intervals cover [lo, hi]", [](const Config&, const Options& o) {
    const OpenCover cover = parse_cover(o);
    const CoverCheck v = verify_cover(cover);
    Reply r{Json{{"covered", v.covered}}, Json::object(), v.covered};
    if (v.uncovered) r.diagnostics["uncovered"] = real(*v.uncovered);
    if (v.covered) r.diagnostics["length_inequality"] = length_inequality(cover);
    return r;
  });
  cover_opts(c);

  c = add("subcover", "indices of a finite subcover", [](const Config&, const Options& o) {
    const auto idx = finite_subcover(parse_cover(o));
    return Reply{Json(idx)};
  });
  cover_opts(c);

  c = add("lebesgue", "Lebesgue number of a cover", [](const Config&, const Options& o) {
    LebesgueMode mode = LebesgueMode::exact;
    if (o.mode == "sampled") {
      mode = LebesgueMode::sampled;
    } else if (o.mode != "exact") {
      throw UsageError("--mode must be exact or sampled");
    }
    const LebesgueNumber l = lebesgue_number(parse_cover(o), mode, o.sample);
    return Reply{real(l.delta), Json{{"binding", real(l.binding)}, {"capped", l.capped}}};
  });
  cover_opts(c);
  c->add_option("--mode", o.mode, "exact or sampled");
  c->add_option("--sample", o.sample, "initial sample size for sampled mode");

  c = add("modulus", "modulus of uniform continuity for eps", [](const Config&, const Options& o) {
    const Modulus m = uniform_modulus(parse(o.f), o.a, o.b, o.eps, o.grid);
    return Reply{real(m.delta), Json{{"grid", m.grid}, {"capped", m.capped}}};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--eps", o.eps)->required();
  c->add_option("--grid", o.grid);

  c = add("stepapprox", "step function within eps of f", [](const Config&, const Options& o) {
    const Expr f = parse(o.f);
    const StepApproximation s =
        o.delta ? step_approximation(f, o.a, o.b, o.eps, *o.delta) : step_approximation(f, o.a, o.b, o.eps);
    Json res = step_json(s.phi);
    res["delta"] = real(s.delta);
    res["sup_error"] = real(s.sup_error);
    return Reply{res, Json{{"cells", s.phi.partition().cells()}}, s.sup_error < o.eps};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--eps", o.eps)->required();
  c->add_option("--delta", o.delta, "use this mesh instead of a computed modulus");

  c = add("stepint", "integral of a step function", [](const Config&, const Options& o) {
    return Reply{real(step_integral(parse_step(o.nodes, o.values)))};
  });
  c->add_option("--partition,--nodes", o.nodes, "[x0,x1,...] or x0,x1,...")->required();
  c->add_option("--values", o.values)->required();

  c = add("stepop", "add, scale, negate, split or re-express step functions", [](const Config&, const Options& o) {
    const StepFunction phi = parse_step(o.nodes, o.values);
    if (o.op == "add") return Reply{step_json(step_add(phi, parse_step(o.nodes2, o.values2)))};
    if (o.op == "scale") return Reply{step_json(step_scale(phi, o.scalar))};
    if (o.op == "negate") return Reply{step_json(step_negate(phi))};
    if (o.op == "reexpress") return Reply{step_json(step_reexpress(phi, Partition(parse_list(o.onto, "--onto"))))};
    if (o.op == "split") {
      const auto [left, right] = step_split(phi, o.c);
      return Reply{Json{{"left", step_json(left)}, {"right", step_json(right)}}};
    }
    throw UsageError("--op must be add, scale, negate, split or reexpress");
  });
  c->add_option("--op", o.op, "add, scale, negate, split or reexpress")->required();
  c->add_option("--partition,--nodes", o.nodes)->required();
  c->add_option("--values", o.values)->required();
  c->add_option("--partition2,--nodes2", o.nodes2, "second operand for add");
  c->add_option("--values2", o.values2, "second operand for add");
  c->add_option("--by", o.scalar, "factor for scale");
  c->add_option("--c", o.c, "split point");
  c->add_option("--onto", o.onto, "refined partition for reexpress");

  c = add("darboux", "sampled lower and upper Darboux sums", [](const Config&, const Options& o) {
    const DarbouxBounds d = darboux_bounds(parse(o.f), o.a, o.b, o.n, o.m);
    return Reply{Json{{"lower", real(d.lower)}, {"upper", real(d.upper)}}};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--n", o.n, "cells")->required();
  c->add_option("--m", o.m, "samples per cell");

  c = add("riemann", "Riemann sum on a uniform partition", [](const Config& cfg, const Options& o) {
    ChoiceFunction choice;
    if (o.choice == "left") {
      choice = ChoiceFunction::left();
    } else if (o.choice == "right") {
      choice = ChoiceFunction::right();
    } else if (o.choice == "midpoint") {
      choice = ChoiceFunction::midpoint();
    } else if (o.choice == "random") {
      choice = ChoiceFunction::random(cfg.seed);
    } else if (o.choice == "points") {
      choice = ChoiceFunction::explicit_points(parse_list(o.points, "--points"));
    } else {
      throw UsageError("--choice must be left, right, midpoint, random or points");
    }
    return Reply{real(riemann_sum(parse(o.f), uniform_partition(o.a, o.b, o.n), choice))};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--n", o.n, "cells")->required();
  c->add_option("--choice", o.choice, "left, right, midpoint, random or points");
  c->add_option("--points", o.points, "one choice point per cell");

  c = add("integrate", "certified Riemann integral", [](const Config& cfg, const Options& o) {
    const IntegralCertificate cert = riemann_integral(parse(o.f), o.a, o.b, cfg.tol_or(1e-6), cfg.seed);
    Json d{{"converged", cert.converged}};
    if (o.certificate) {
      Json levels = Json::array();
      for (const LevelRecord& l : cert.levels) {
        levels.push_back(Json{{"level", l.level},
                              {"cells", l.cells},
                              {"lower", real(l.lower)},
                              {"upper", real(l.upper)},
                              {"left", real(l.left)},
                              {"right", real(l.right)},
                              {"midpoint", real(l.midpoint)},
                              {"random", real(l.random)}});
      }
      d["levels"] = levels;
    } else {
      const LevelRecord& last = cert.levels.back();
      d["level"] = last.level;
      d["cells"] = last.cells;
      d["lower"] = real(last.lower);
      d["upper"] = real(last.upper);
    }
    return Reply{real(cert.value), d, cert.converged};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_flag("--certificate", o.certificate, "report every refinement level");

  c = add("additivity", "check that the integral over [a, b] splits at c", [](const Config& cfg, const Options& o) {
    const AdditivityCheck r = integral_additivity_check(parse(o.f), o.a, o.c, o.b, cfg.tol_or(1e-6));
    return Reply{Json{{"additive", r.ok}},
                 Json{{"whole", real(r.whole)}, {"left", real(r.left)}, {"right", real(r.right)}}, r.ok};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--c", o.c)->required();

  c = add("bounds", "check m(b-a) <= integral <= M(b-a)", [](const Config& cfg, const Options& o) {
    const bool ok = bounds_check(parse(o.f), o.a, o.b, o.lower, o.upper, cfg.tol_or(1e-6));
    return Reply{Json{{"within", ok}}, Json::object(), ok};
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);
  c->add_option("--lower", o.lower, "m")->required();
  c->add_option("--upper", o.upper, "M")->required();

  c = add("antideriv", "integral of f from a to x", [](const Config& cfg, const Options& o) {
    return Reply{real(antiderivative(parse(o.f), o.a, cfg.tol_or(1e-6))(o.x))};
  });
  c->add_option("--f", o.f)->required();
  c->add_option("--a", o.a, "base point")->required();
  c->add_option("--x", o.x)->required();

  c = add("ftc2", "check that the integral of F' equals F(b) - F(a)", [](const Config& cfg, const Options& o) {
    const Ftc2Check r = ftc2_check(parse(o.F), o.a, o.b, cfg.tol_or(1e-6));
    return Reply{Json{{"holds", r.ok}}, Json{{"integral", real(r.integral)}, {"difference", real(r.difference)}},
                 r.ok};
  });
  c->add_option("--F", o.F)->required();
  interval_opts(c, o);

  c = add("imvt", "point where f equals its mean on [a, b]", [](const Config& cfg, const Options& o) {
    const MeanValue m = imvt_witness(parse(o.f), o.a, o.b, cfg.tol_or(1e-6));
    Reply r{real(m.xi), Json{{"mean", real(m.mean)}, {"residual", real(m.residual)}}};
    if (!m.diagnostic.empty()) r.diagnostics["note"] = m.diagnostic;
    return r;
  });
  c->add_option("--f", o.f)->required();
  interval_opts(c, o);

  c = add("adt", "check that F - G is constant when F' = G'", [](const Config& cfg, const Options& o) {
    const AdtCheck r = adt_check(parse(o.F), parse(o.G), o.a, o.b, o.samples ? o.samples : 101, cfg.tol_or(1e-6));
    return Reply{Json{{"constant", r.ok}}, Json{{"difference", real(r.constant)}, {"spread", real(r.spread)}}, r.ok};
  });
  c->add_option("--F", o.F)->required();
  c->add_option("--G", o.G)->required();
  interval_opts(c, o);
  c->add_option("--samples", o.samples);

  c = add("seq", "sequence tools; the sequence is an expression in n", [](const Config& cfg, const Options& o) {
    const Sequence s = sequence_of(o.s);
    if (o.op == "monotone") return Reply{to_string(check_monotone(s, o.count ? o.count : 1000))};
    if (o.op == "cauchy") {
      const CauchyWindow w = check_cauchy_window(s, o.eps, o.lo, o.hi);
      return Reply{Json{{"cauchy", w.ok}}, Json{{"m", w.m}, {"n", w.n}, {"gap", real(w.gap)}}, w.ok};
    }
    if (o.op == "bound") return Reply{real(bound_prefix(s, o.count ? o.count : 1000))};
    if (o.op == "extract") {
      const auto [lo, hi] = parse_pair(o.box, "--box");
      const Extraction e = bw_extract(s, Interval(lo, hi), o.depth, o.budget);
      const Interval& last = e.intervals.back();
      return Reply{Json(e.indices), Json{{"final_lo", real(last.lo())}, {"final_hi", real(last.hi())}}};
    }
    if (o.op == "mlimit") return Reply{real(monotone_limit(s, o.upper_bound, cfg.tol_or(1e-6), o.budget))};
    if (o.op == "diverge") return Reply{Json(divergence_witness(s, o.eps, o.count ? o.count : 10, o.budget))};
    if (o.op == "climit") {
      const auto [lo, hi] = parse_pair(o.box, "--box");
      return Reply{real(cauchy_limit(s, Interval(lo, hi), cfg.tol_or(1e-6), o.budget))};
    }
    throw UsageError("--op must be monotone, cauchy, bound, extract, mlimit, diverge or climit");
  });
  c->add_option("--s", o.s, "expression in n")->required();
  c->add_option("--op", o.op)->required();
  c->add_option("--count", o.count, "terms to inspect or witnesses to find");
  c->add_option("--eps", o.eps);
  c->add_option("--lo", o.lo, "first index of the window");
  c->add_option("--hi", o.hi, "last index of the window");
  c->add_option("--box", o.box, "lo:hi containing every term");
  c->add_option("--depth", o.depth);
  c->add_option("--budget", o.budget);
  c->add_option("--upper", o.upper_bound, "upper bound for mlimit");

  c = add("interval", "interval and partition tools", [](const Config& cfg, const Options& o) {
    if (o.op == "bisect") {
      const auto [l, r] = bisect(Interval(o.a, o.b));
      return Reply{Json{{"left", reals({l.lo(), l.hi()})}, {"right", reals({r.lo(), r.hi()})}}};
    }
    if (o.op == "partition") return Reply{reals(uniform_partition(o.a, o.b, o.n).nodes())};
    if (o.op == "width") {
      if (!o.delta) throw UsageError("--op width needs --delta");
      return Reply{Json(cells_for_width(o.a, o.b, *o.delta))};
    }
    if (o.op == "refine") {
      return Reply{reals(refine(Partition(parse_list(o.nodes, "--nodes")), Partition(parse_list(o.nodes2, "--nodes2")))
                             .nodes())};
    }
    if (o.op == "shrink") {
      const Expr lo = parse(o.lo_seq, 'n');
      const Expr hi = parse(o.hi_seq, 'n');
      const NestedSequence s = [lo, hi](std::uint64_t k) {
        return Interval(eval(lo, static_cast<double>(k)), eval(hi, static_cast<double>(k)));
      };
      return Reply{real(shrink_to_point(s, cfg.tol_or(1e-6), o.budget))};
    }
    throw UsageError("--op must be bisect, partition, width, refine or shrink");
  });
  c->add_option("--op", o.op)->required();
  c->add_option("--a", o.a);
  c->add_option("--b", o.b);
  c->add_option("--n", o.n);
  c->add_option("--delta", o.delta);
  c->add_option("--nodes", o.nodes);
  c->add_option("--nodes2", o.nodes2);
  c->add_option("--lo-seq", o.lo_seq, "left endpoints as an expression in n");
  c->add_option("--hi-seq", o.hi_seq, "right endpoints as an expression in n");
  c->add_option("--budget", o.budget, "most intervals to inspect");

  CLI::App* graph = app.add_subcommand("graph", "implication graph of the completeness principles");
  graph->require_subcommand(1, 1);

  auto shipped = [](const Options& o) {
    const PrincipleGraph& g = build();
    if (o.without.empty()) return g;
    const auto arrow = o.without.find("->");
    if (arrow == std::string::npos) throw UsageError("--without expects FROM->TO");
    return g.without_edge(o.without.substr(0, arrow), o.without.substr(arrow + 2));
  };

  c = add(graph, "path", "shortest implication chain", [shipped](const Config&, const Options& o) {
    const auto edges = path(shipped(o), o.from, o.to);
    Json chain = Json::array();
    Json prov = Json::array();
    for (const auto& e : edges) {
      chain.push_back(e.from + " -> " + e.to);
      prov.push_back(e.provenance);
    }
    return Reply{Json{{"length", edges.size()}, {"path", chain}}, Json{{"provenance", prov}}};
  });
  c->add_option("from", o.from)->required();
  c->add_option("to", o.to)->required();
  c->add_option("--without", o.without, "drop the edge FROM->TO first");

  c = add(graph, "scc", "are all principles equivalent", [shipped](const Config&, const Options& o) {
    const PrincipleGraph g = shipped(o);
    const bool ok = check_equivalence(g);
    return Reply{Json{{"strongly connected", ok}}, Json{{"components", components(g)}}, ok};
  });
  c->add_option("--without", o.without, "drop the edge FROM->TO first");

  c = add(graph, "dot", "Graphviz rendering", [shipped](const Config&, const Options& o) {
    return Reply{export_dot(shipped(o))};
  });
  c->add_option("--without", o.without, "drop the edge FROM->TO first");

  c = add(graph, "data", "the node and edge list as JSON", [shipped](const Config&, const Options& o) {
    return Reply{Json::parse(graph_to_json(shipped(o)))};
  });
  c->add_option("--without", o.without, "drop the edge FROM->TO first");
}

const CLI::App* leaf(const CLI::App& app) {
  const CLI::App* cur = &app;
  while (!cur->get_subcommands().empty()) cur = cur->get_subcommands().front();
  return cur;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& env_seed) {
  Cli cli;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << cli.app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    const CLI::App* at = leaf(cli.app);
    std::string message = e.what();
    if (at == &cli.app) {
      for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--tol" || a == "--seed" || a == "--cap") {
          ++i;
        } else if (a.empty() || a[0] != '-') {
          if (cli.app.get_subcommand_no_throw(a) == nullptr) message = "unknown subcommand '" + a + "'";
          break;
        }
      }
    }
    err << "error: " << message << "\n" << at->help();
    return 2;
  }

  const bool json = cli.config.json;
  auto fail = [&](int code, const std::string& kind, const std::string& message) {
    err << "error: " << message << "\n";
    if (json) out << Json{{"result", nullptr}, {"diagnostics", {{"error", kind}, {"message", message}}}}.dump() << "\n";
    return code;
  };

  try {
    if (env_seed) {
      std::uint64_t seed = 0;
      const auto r = std::from_chars(env_seed->data(), env_seed->data() + env_seed->size(), seed);
      if (r.ec != std::errc() || r.ptr != env_seed->data() + env_seed->size()) {
        throw UsageError("FC_SEED must be a non-negative integer, got '" + *env_seed + "'");
      }
      cli.config.seed = seed;
    }
    const auto it = cli.handlers.find(leaf(cli.app));
    if (it == cli.handlers.end()) throw UsageError("missing subcommand");
    const Reply reply = it->second(cli.config, cli.o);
    if (json) {
      out << Json{{"result", reply.result}, {"diagnostics", reply.diagnostics}}.dump() << "\n";
    } else {
      out << text(reply.result);
    }
    return reply.ok ? 0 : 1;
  } catch (const fc::ParseError& e) {
    return fail(2, "parse", e.what());
  } catch (const UsageError& e) {
    return fail(2, "usage", e.what());
  } catch (const MathError& e) {
    return fail(1, to_string(e.failure()), e.what());
  } catch (const std::exception& e) {
    return fail(1, "internal", e.what());
  }
}

}  // namespace fc::cli
