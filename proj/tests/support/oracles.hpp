#pragma once

// Test-only reference computations. Nothing here calls into the library's
// algorithms; each oracle recomputes its answer the slow, obvious way.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fc/random.hpp"

namespace oracle {

struct Piece {
  double lo;
  double hi;
};

/// Smallest distance between two grid points of [a, b] that share no piece.
/// Returns b - a when every pair shares one. Checks all pairs.
double lebesgue_brute(double a, double b, const std::vector<Piece>& pieces, int grid);

/// True when some piece contains both x and c (strictly).
bool share_piece(const std::vector<Piece>& pieces, double x, double c);

/// True when every point of [a, b] lies in some piece, by a sweep over all
/// piece endpoints that only uses the defining inequalities.
bool covers(double a, double b, const std::vector<Piece>& pieces);

/// A random cover of [a, b] known to cover by construction.
std::vector<Piece> random_cover(fc::Rng& rng, double a, double b);

/// Sum of c_i (x_i - x_{i-1}) in long double.
long double step_sum(const std::vector<double>& nodes, const std::vector<double>& values);

/// Strictly increasing random nodes from a to b with `cells` cells.
std::vector<double> random_nodes(fc::Rng& rng, double a, double b, std::size_t cells);

/// Polynomial with the given coefficients (constant first) in the
/// expression grammar, and its value by Horner in long double.
std::string polynomial_text(const std::vector<double>& coeffs);
long double horner(const std::vector<double>& coeffs, long double x);
std::vector<double> poly_derivative(const std::vector<double>& coeffs);

/// Random smooth expression text over sin, cos, exp and polynomials.
std::string random_smooth(fc::Rng& rng, int depth);

/// Fourth-order central difference with Richardson extrapolation.
template <class F>
double derivative_fd(const F& f, double x, double h = 1e-2) {
  auto d = [&](double s) { return (f(x - 2 * s) - 8 * f(x - s) + 8 * f(x + s) - f(x + 2 * s)) / (12 * s); };
  return (16 * d(h / 2) - d(h)) / 15;
}

/// Accepts the subset of the DOT language the exporter is allowed to emit:
/// a digraph with node, edge and attribute statements, quoted or bare ids,
/// and bracketed attribute lists. Returns an empty string on success, else a
/// description of the first problem.
std::string dot_syntax_error(const std::string& text);

/// Node ids and (from, to) pairs found in DOT text accepted by the checker.
struct DotGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
};
DotGraph dot_parse(const std::string& text);

}  // namespace oracle
