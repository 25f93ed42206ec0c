#include "fc/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <climits>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "fc/error.hpp"

namespace fc {

struct Expr::Node {
  Kind kind = Kind::constant;
  Func func = Func::sin;
  int exponent = 0;
  double value = 0.0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
  std::size_t size = 1;
  bool closed = true;
};

Expr::Expr() : Expr(constant(0.0)) {}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->closed = false;
  return Expr(std::move(n));
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  if (kind != Kind::add && kind != Kind::sub && kind != Kind::mul && kind != Kind::div) {
    throw UsageError("Expr::binary: not a binary operator");
  }
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->size = 1 + lhs.node_->size + rhs.node_->size;
  n->closed = lhs.node_->closed && rhs.node_->closed;
  n->a = std::move(lhs.node_);
  n->b = std::move(rhs.node_);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::neg;
  n->size = 1 + operand.node_->size;
  n->closed = operand.node_->closed;
  n->a = std::move(operand.node_);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::pow;
  n->exponent = exponent;
  n->size = 1 + base.node_->size;
  n->closed = base.node_->closed;
  n->a = std::move(base.node_);
  return Expr(std::move(n));
}

Expr Expr::apply(Func func, Expr argument) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::func;
  n->func = func;
  n->size = 1 + argument.node_->size;
  n->closed = argument.node_->closed;
  n->a = std::move(argument.node_);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
double Expr::value() const noexcept { return node_->value; }
int Expr::exponent() const noexcept { return node_->exponent; }
Expr::Func Expr::func() const noexcept { return node_->func; }

Expr Expr::lhs() const {
  if (!node_->a) throw UsageError("Expr::lhs: leaf node has no operand");
  return Expr(node_->a);
}

Expr Expr::rhs() const {
  if (!node_->b) throw UsageError("Expr::rhs: node has no right operand");
  return Expr(node_->b);
}

bool Expr::is_constant(double v) const noexcept { return node_->kind == Kind::constant && node_->value == v; }
bool Expr::is_closed() const noexcept { return node_->closed; }
std::size_t Expr::size() const noexcept { return node_->size; }

double Expr::operator()(double x) const { return eval(*this, x); }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& p = *a.node_;
  const auto& q = *b.node_;
  if (p.kind != q.kind || p.size != q.size) return false;
  switch (p.kind) {
    case Expr::Kind::constant: return p.value == q.value;
    case Expr::Kind::variable: return true;
    case Expr::Kind::pow:
      if (p.exponent != q.exponent) return false;
      break;
    case Expr::Kind::func:
      if (p.func != q.func) return false;
      break;
    default: break;
  }
  if (!(Expr(p.a) == Expr(q.a))) return false;
  if (p.b) return Expr(p.b) == Expr(q.b);
  return true;
}

Expr operator+(Expr a, Expr b) { return Expr::binary(Expr::Kind::add, std::move(a), std::move(b)); }
Expr operator-(Expr a, Expr b) { return Expr::binary(Expr::Kind::sub, std::move(a), std::move(b)); }
Expr operator*(Expr a, Expr b) { return Expr::binary(Expr::Kind::mul, std::move(a), std::move(b)); }
Expr operator/(Expr a, Expr b) { return Expr::binary(Expr::Kind::div, std::move(a), std::move(b)); }
Expr operator-(Expr a) { return Expr::negate(std::move(a)); }
Expr operator+(Expr a, double b) { return std::move(a) + Expr::constant(b); }
Expr operator-(Expr a, double b) { return std::move(a) - Expr::constant(b); }
Expr operator*(double a, Expr b) { return Expr::constant(a) * std::move(b); }
Expr pow(Expr base, int exponent) { return Expr::power(std::move(base), exponent); }
Expr sin(Expr e) { return Expr::apply(Expr::Func::sin, std::move(e)); }
Expr cos(Expr e) { return Expr::apply(Expr::Func::cos, std::move(e)); }
Expr exp(Expr e) { return Expr::apply(Expr::Func::exp, std::move(e)); }
Expr ln(Expr e) { return Expr::apply(Expr::Func::ln, std::move(e)); }
Expr sqrt(Expr e) { return Expr::apply(Expr::Func::sqrt, std::move(e)); }
Expr abs(Expr e) { return Expr::apply(Expr::Func::abs, std::move(e)); }

const char* to_string(Expr::Func f) noexcept {
  switch (f) {
    case Expr::Func::sin: return "sin";
    case Expr::Func::cos: return "cos";
    case Expr::Func::exp: return "exp";
    case Expr::Func::ln: return "ln";
    case Expr::Func::sqrt: return "sqrt";
    case Expr::Func::abs: return "abs";
  }
  return "?";
}

double ipow(double base, int exponent) {
  unsigned m = exponent < 0 ? 0u - static_cast<unsigned>(exponent) : static_cast<unsigned>(exponent);
  double r = 1.0;
  double b = base;
  while (m != 0) {
    if (m & 1u) r *= b;
    m >>= 1;
    if (m != 0) b *= b;
  }
  return exponent < 0 ? 1.0 / r : r;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double apply_func(Expr::Func f, double u, double x) {
  switch (f) {
    case Expr::Func::sin: return std::sin(u);
    case Expr::Func::cos: return std::cos(u);
    case Expr::Func::exp: return std::exp(u);
    case Expr::Func::ln:
      if (!(u > 0.0)) throw DomainError("ln of non-positive argument", x);
      return std::log(u);
    case Expr::Func::sqrt:
      if (!(u >= 0.0)) throw DomainError("sqrt of negative argument", x);
      return std::sqrt(u);
    case Expr::Func::abs: return std::fabs(u);
  }
  return u;
}

}  // namespace

struct ExprAccess {
  using Node = Expr::Node;
  static const Node& node(const Expr& e) { return *e.node_; }
  static double eval_node(const Node& n, double x);
};

double ExprAccess::eval_node(const Node& n, double x) {
  switch (n.kind) {
    case Expr::Kind::constant: return n.value;
    case Expr::Kind::variable: return x;
    case Expr::Kind::add: return eval_node(*n.a, x) + eval_node(*n.b, x);
    case Expr::Kind::sub: return eval_node(*n.a, x) - eval_node(*n.b, x);
    case Expr::Kind::mul: return eval_node(*n.a, x) * eval_node(*n.b, x);
    case Expr::Kind::div: {
      const double num = eval_node(*n.a, x);
      const double den = eval_node(*n.b, x);
      if (den == 0.0) throw DomainError("division by zero", x);
      return num / den;
    }
    case Expr::Kind::neg: return -eval_node(*n.a, x);
    case Expr::Kind::pow: {
      const double b = eval_node(*n.a, x);
      if (b == 0.0 && n.exponent < 0) throw DomainError("division by zero", x);
      return ipow(b, n.exponent);
    }
    case Expr::Kind::func: return apply_func(n.func, eval_node(*n.a, x), x);
  }
  return 0.0;
}

double eval(const Expr& e, double x) {
  return ExprAccess::eval_node(ExprAccess::node(e), x);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, char variable) : text_(text), variable_(variable) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError("syntax error: " + what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = std::move(e) + term();
      } else if (accept('-')) {
        e = std::move(e) - term();
      } else {
        return e;
      }
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*')) {
        e = std::move(e) * factor();
      } else if (accept('/')) {
        e = std::move(e) / factor();
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) return pow(std::move(b), integer());
    return b;
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected integer exponent");
    }
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, v);
    if (ec != std::errc() || v > INT_MAX) {
      pos_ = start;
      fail("exponent out of range");
    }
    return negative ? -static_cast<int>(v) : static_cast<int>(v);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_ || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name.size() == 1 && name[0] == variable_) return Expr::variable();
    static constexpr std::array<Expr::Func, 6> funcs = {Expr::Func::sin, Expr::Func::cos, Expr::Func::exp,
                                                        Expr::Func::ln, Expr::Func::sqrt, Expr::Func::abs};
    for (const auto f : funcs) {
      if (name == to_string(f)) {
        expect('(');
        Expr arg = expr();
        expect(')');
        return Expr::apply(f, std::move(arg));
      }
    }
    pos_ = start;
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  char variable_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, char variable) { return Parser(text, variable).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string format_number(double v) {
  if (!std::isfinite(v)) throw UsageError("cannot print a non-finite constant");
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

int level(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::sub: return 1;
    case Expr::Kind::mul:
    case Expr::Kind::div: return 2;
    case Expr::Kind::pow: return 3;
    default: return 4;
  }
}

void print(const Expr& e, int min_level, char var, std::string& out) {
  const bool wrap = level(e) < min_level;
  if (wrap) out += '(';
  switch (e.kind()) {
    case Expr::Kind::constant: out += format_number(e.value()); break;
    case Expr::Kind::variable: out += var; break;
    case Expr::Kind::add:
    case Expr::Kind::sub:
      print(e.lhs(), 1, var, out);
      out += e.kind() == Expr::Kind::add ? " + " : " - ";
      print(e.rhs(), 2, var, out);
      break;
    case Expr::Kind::mul:
    case Expr::Kind::div:
      print(e.lhs(), 2, var, out);
      out += e.kind() == Expr::Kind::mul ? '*' : '/';
      print(e.rhs(), 3, var, out);
      break;
    case Expr::Kind::pow:
      print(e.operand(), 4, var, out);
      out += '^';
      out += std::to_string(e.exponent());
      break;
    case Expr::Kind::neg:
      out += '-';
      print(e.operand(), 4, var, out);
      break;
    case Expr::Kind::func:
      out += to_string(e.func());
      out += '(';
      print(e.operand(), 1, var, out);
      out += ')';
      break;
  }
  if (wrap) out += ')';
}

}  // namespace

std::string to_string(const Expr& e, char variable) {
  std::string out;
  print(e, 1, variable, out);
  return out;
}

// ---------------------------------------------------------------------------
// Differentiation. The builders below fold the trivial cases (0 + a, 1 * a,
// constant arithmetic) so repeated differentiation stays small.

namespace {

bool is_const(const Expr& e) { return e.kind() == Expr::Kind::constant; }

Expr s_neg(const Expr& a) {
  if (is_const(a)) return Expr::constant(-a.value());
  if (a.kind() == Expr::Kind::neg) return a.operand();
  return -a;
}

Expr s_add(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() + b.value());
  return a + b;
}

Expr s_sub(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return s_neg(b);
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() - b.value());
  return a - b;
}

Expr s_mul(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr::constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (is_const(a) && is_const(b)) return Expr::constant(a.value() * b.value());
  if (is_const(b)) return s_mul(b, a);
  if (is_const(a) && b.kind() == Expr::Kind::mul && is_const(b.lhs())) {
    return s_mul(Expr::constant(a.value() * b.lhs().value()), b.rhs());
  }
  return a * b;
}

Expr s_div(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return Expr::constant(0.0);
  if (b.is_constant(1.0)) return a;
  return a / b;
}

Expr s_pow(const Expr& a, int n) {
  if (n == 0) return Expr::constant(1.0);
  if (n == 1) return a;
  if (is_const(a) && n > 0) return Expr::constant(ipow(a.value(), n));
  return pow(a, n);
}

Expr d1(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::constant: return Expr::constant(0.0);
    case K::variable: return Expr::constant(1.0);
    case K::add: return s_add(d1(e.lhs()), d1(e.rhs()));
    case K::sub: return s_sub(d1(e.lhs()), d1(e.rhs()));
    case K::mul: {
      const Expr a = e.lhs();
      const Expr b = e.rhs();
      return s_add(s_mul(d1(a), b), s_mul(a, d1(b)));
    }
    case K::div: {
      const Expr a = e.lhs();
      const Expr b = e.rhs();
      const Expr db = d1(b);
      if (db.is_constant(0.0)) return s_div(d1(a), b);
      return s_div(s_sub(s_mul(d1(a), b), s_mul(a, db)), s_pow(b, 2));
    }
    case K::neg: return s_neg(d1(e.operand()));
    case K::pow: {
      const int n = e.exponent();
      if (n == 0) return Expr::constant(0.0);
      const Expr u = e.operand();
      return s_mul(s_mul(Expr::constant(static_cast<double>(n)), s_pow(u, n - 1)), d1(u));
    }
    case K::func: {
      const Expr u = e.operand();
      const Expr du = d1(u);
      switch (e.func()) {
        case Expr::Func::sin: return s_mul(cos(u), du);
        case Expr::Func::cos: return s_neg(s_mul(sin(u), du));
        case Expr::Func::exp: return s_mul(e, du);
        case Expr::Func::ln: return s_div(du, u);
        case Expr::Func::sqrt: return s_div(du, s_mul(Expr::constant(2.0), e));
        case Expr::Func::abs:
          throw MathError(Failure::not_differentiable, "abs(" + to_string(u) + ") has no symbolic derivative");
      }
    }
  }
  return Expr::constant(0.0);
}

}  // namespace

Expr differentiate(const Expr& e, unsigned n) {
  Expr d = e;
  for (unsigned i = 0; i < n; ++i) d = d1(d);
  return d;
}

Expr compose(const Expr& outer, const Expr& inner) {
  using K = Expr::Kind;
  switch (outer.kind()) {
    case K::constant: return outer;
    case K::variable: return inner;
    case K::add:
    case K::sub:
    case K::mul:
    case K::div: return Expr::binary(outer.kind(), compose(outer.lhs(), inner), compose(outer.rhs(), inner));
    case K::neg: return -compose(outer.operand(), inner);
    case K::pow: return pow(compose(outer.operand(), inner), outer.exponent());
    case K::func: return Expr::apply(outer.func(), compose(outer.operand(), inner));
  }
  return outer;
}

// ---------------------------------------------------------------------------
// Compiled programs

namespace {
constexpr std::size_t kBlock = 256;
}

Program::Program(const Expr& e) { emit(e); }

void Program::emit(const Expr& e) {
  // Track stack depth while emitting postfix code.
  struct Emitter {
    std::vector<Instr>& code;
    std::size_t depth = 0;
    std::size_t max_depth = 0;

    void push(Instr i) {
      code.push_back(i);
      ++depth;
      if (depth > max_depth) max_depth = depth;
    }

    void walk(const Expr& e) {
      using K = Expr::Kind;
      if (e.is_closed() && e.kind() != K::constant) {
        try {
          push({Op::push_const, 0, fc::eval(e, 0.0)});
          return;
        } catch (const DomainError&) {
          // leave it to fail at evaluation time
        }
      }
      switch (e.kind()) {
        case K::constant: push({Op::push_const, 0, e.value()}); return;
        case K::variable: push({Op::push_x}); return;
        case K::add:
        case K::sub:
        case K::mul:
        case K::div: {
          walk(e.lhs());
          walk(e.rhs());
          const Op op = e.kind() == K::add ? Op::add : e.kind() == K::sub ? Op::sub : e.kind() == K::mul ? Op::mul : Op::div;
          code.push_back({op});
          --depth;
          return;
        }
        case K::neg:
          walk(e.operand());
          code.push_back({Op::neg});
          return;
        case K::pow:
          walk(e.operand());
          code.push_back({Op::pow, e.exponent()});
          return;
        case K::func: {
          walk(e.operand());
          Op op = Op::sin;
          switch (e.func()) {
            case Expr::Func::sin: op = Op::sin; break;
            case Expr::Func::cos: op = Op::cos; break;
            case Expr::Func::exp: op = Op::exp; break;
            case Expr::Func::ln: op = Op::ln; break;
            case Expr::Func::sqrt: op = Op::sqrt; break;
            case Expr::Func::abs: op = Op::abs; break;
          }
          code.push_back({op});
          return;
        }
      }
    }
  };
  Emitter em{code_};
  em.walk(e);
  max_depth_ = em.max_depth;
}

double Program::operator()(double x) const {
  double out = 0.0;
  eval_block(&x, &out, 1);
  return out;
}

void Program::eval(std::span<const double> xs, std::span<double> out) const {
  if (out.size() < xs.size()) throw UsageError("Program::eval: output span too small");
  for (std::size_t i = 0; i < xs.size(); i += kBlock) {
    const std::size_t count = std::min(kBlock, xs.size() - i);
    eval_block(xs.data() + i, out.data() + i, count);
  }
}

void Program::eval_block(const double* xs, double* out, std::size_t count) const {
  thread_local std::vector<double> stack;
  if (stack.size() < max_depth_ * count) stack.resize(max_depth_ * count);
  std::size_t sp = 0;  // number of occupied rows
  auto row = [&](std::size_t r) { return stack.data() + r * count; };

  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::push_const: {
        double* r = row(sp++);
        for (std::size_t i = 0; i < count; ++i) r[i] = in.value;
        break;
      }
      case Op::push_x: {
        std::memcpy(row(sp++), xs, count * sizeof(double));
        break;
      }
      case Op::add: {
        double* a = row(sp - 2);
        const double* b = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] += b[i];
        --sp;
        break;
      }
      case Op::sub: {
        double* a = row(sp - 2);
        const double* b = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] -= b[i];
        --sp;
        break;
      }
      case Op::mul: {
        double* a = row(sp - 2);
        const double* b = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] *= b[i];
        --sp;
        break;
      }
      case Op::div: {
        double* a = row(sp - 2);
        const double* b = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) {
          if (b[i] == 0.0) throw DomainError("division by zero", xs[i]);
        }
        for (std::size_t i = 0; i < count; ++i) a[i] /= b[i];
        --sp;
        break;
      }
      case Op::neg: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] = -a[i];
        break;
      }
      case Op::pow: {
        double* a = row(sp - 1);
        const int n = in.exponent;
        if (n < 0) {
          for (std::size_t i = 0; i < count; ++i) {
            if (a[i] == 0.0) throw DomainError("division by zero", xs[i]);
          }
        }
        // Same multiplication order as ipow, vectorised across the block.
        std::array<double, kBlock> r;
        std::array<double, kBlock> b;
        for (std::size_t i = 0; i < count; ++i) {
          r[i] = 1.0;
          b[i] = a[i];
        }
        unsigned m = n < 0 ? 0u - static_cast<unsigned>(n) : static_cast<unsigned>(n);
        while (m != 0) {
          if (m & 1u) {
            for (std::size_t i = 0; i < count; ++i) r[i] *= b[i];
          }
          m >>= 1;
          if (m != 0) {
            for (std::size_t i = 0; i < count; ++i) b[i] *= b[i];
          }
        }
        if (n < 0) {
          for (std::size_t i = 0; i < count; ++i) a[i] = 1.0 / r[i];
        } else {
          for (std::size_t i = 0; i < count; ++i) a[i] = r[i];
        }
        break;
      }
      case Op::sin: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] = std::sin(a[i]);
        break;
      }
      case Op::cos: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] = std::cos(a[i]);
        break;
      }
      case Op::exp: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] = std::exp(a[i]);
        break;
      }
      case Op::ln: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) {
          if (!(a[i] > 0.0)) throw DomainError("ln of non-positive argument", xs[i]);
          a[i] = std::log(a[i]);
        }
        break;
      }
      case Op::sqrt: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) {
          if (!(a[i] >= 0.0)) throw DomainError("sqrt of negative argument", xs[i]);
          a[i] = std::sqrt(a[i]);
        }
        break;
      }
      case Op::abs: {
        double* a = row(sp - 1);
        for (std::size_t i = 0; i < count; ++i) a[i] = std::fabs(a[i]);
        break;
      }
    }
  }
  std::memcpy(out, row(0), count * sizeof(double));
}

}  // namespace fc
