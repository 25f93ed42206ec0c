#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fc {

/// Immutable expression tree for a real function of one variable.
///
/// Nodes are shared, so copying an Expr is cheap and copies may be handed to
/// other threads freely. Evaluation follows IEEE double arithmetic and throws
/// DomainError outside the natural domain.
class Expr {
 public:
  enum class Kind { constant, variable, add, sub, mul, div, neg, pow, func };
  enum class Func { sin, cos, exp, ln, sqrt, abs };

  /// The zero constant.
  Expr();

  static Expr constant(double value);
  static Expr variable();
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr negate(Expr operand);
  static Expr power(Expr base, int exponent);
  static Expr apply(Func func, Expr argument);

  Kind kind() const noexcept;
  double value() const noexcept;  ///< constant nodes only
  int exponent() const noexcept;  ///< pow nodes only
  Func func() const noexcept;     ///< func nodes only
  Expr lhs() const;               ///< binary nodes; also the operand of neg/pow/func
  Expr rhs() const;               ///< binary nodes only
  Expr operand() const { return lhs(); }

  bool is_constant(double v) const noexcept;
  /// True when the tree contains no variable node.
  bool is_closed() const noexcept;
  std::size_t size() const noexcept;

  double operator()(double x) const;

  /// Structural equality.
  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend struct ExprAccess;
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(Expr a, Expr b);
Expr operator-(Expr a, Expr b);
Expr operator*(Expr a, Expr b);
Expr operator/(Expr a, Expr b);
Expr operator-(Expr a);
Expr operator+(Expr a, double b);
Expr operator-(Expr a, double b);
Expr operator*(double a, Expr b);
Expr pow(Expr base, int exponent);
Expr sin(Expr e);
Expr cos(Expr e);
Expr exp(Expr e);
Expr ln(Expr e);
Expr sqrt(Expr e);
Expr abs(Expr e);

const char* to_string(Expr::Func f) noexcept;

/// Parses `text` under the grammar
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' integer)?
///   base   := number | VAR | ident '(' expr ')' | '(' expr ')' | '-' base
///
/// where VAR is `variable` (normally 'x'; sequences use 'n'). Note that unary
/// minus sits inside `base`, so "-x^2" is (-x)^2.
Expr parse(std::string_view text, char variable = 'x');

/// Prints `e` in the grammar accepted by parse; parse(to_string(e)) evaluates
/// identically to e.
std::string to_string(const Expr& e, char variable = 'x');

double eval(const Expr& e, double x);

/// The n-th symbolic derivative. Throws MathError(not_differentiable) on abs.
Expr differentiate(const Expr& e, unsigned n = 1);

/// outer(inner(x)).
Expr compose(const Expr& outer, const Expr& inner);

/// Integer power by binary exponentiation; shared by every evaluator so the
/// tree walker and the compiled form agree bit for bit.
double ipow(double base, int exponent);

/// Expression compiled to a flat stack program for batch evaluation.
///
/// Results match eval() exactly; the batch form exists because integration
/// sweeps evaluate the same expression millions of times.
class Program {
 public:
  explicit Program(const Expr& e);

  double operator()(double x) const;
  /// out[i] = e(xs[i]). Throws DomainError at the first offending point.
  void eval(std::span<const double> xs, std::span<double> out) const;

 private:
  enum class Op : unsigned char { push_const, push_x, add, sub, mul, div, neg, pow, sin, cos, exp, ln, sqrt, abs };
  struct Instr {
    Op op;
    int exponent = 0;
    double value = 0.0;
  };
  void emit(const Expr& e);
  void eval_block(const double* xs, double* out, std::size_t count) const;

  std::vector<Instr> code_;
  std::size_t max_depth_ = 0;
};

}  // namespace fc
