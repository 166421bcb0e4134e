#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "dzeta/trees.hpp"
#include "dzeta/words.hpp"

namespace dzeta {

struct SeriesEvalConfig {
  std::size_t cutoff = 100000;
  bool report_tail = true;

  void validate() const;
};

struct QuadEvalConfig {
  std::size_t nodes_per_axis = 64;
  std::size_t max_depth = 4;

  void validate() const;
};

enum class IntegralPath { Series, Quadrature };

struct EvalResult {
  double value = 0.0;
  std::optional<double> tail_bound;
};

/// Truncated ζ(w): Σ over 1 <= n_k < ... < n_1 <= N of Π n_i^{-w_i}, by
/// prefix sums in O(N·k). The tail bound is a rigorous overestimate of the
/// discarded part (see README).
EvalResult mzv_series(const SeriesWord& w, const SeriesEvalConfig& cfg);

/// Iterated integral over 0 < u_n < ... < u_1 < 1 of Π g_{w_i}(u_i), with
/// g_x = 1/u and g_y = 1/(1-u). Tensor Gauss–Legendre on the cube obtained from
/// u_i = u_{i-1} v_i, after a graded change of variable on each axis.
EvalResult mzv_integral_quad(const IntegralWord& w, const QuadEvalConfig& cfg);

/// Gauss–Legendre nodes and weights on (0, 1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre01(std::size_t n);

/// Σ c_i ζ(w_i); tails summed with |c_i| weights. DivergentWord names the word.
EvalResult eval_lincomb_words(const LinComb<SeriesWord>& c, const SeriesEvalConfig& cfg);

/// ζ ∘ flatten_series.
EvalResult azv_series(const VertexTree& t, const SeriesEvalConfig& cfg);

/// Literal truncated multi-sum over the tree order, indices in [1, N]; at most
/// four internal vertices.
double azv_direct(const VertexTree& t, std::size_t cutoff);

/// ζ_Int ∘ flatten_int. The series path evaluates each word through
/// unbinarize + mzv_series; the quadrature path integrates it directly.
EvalResult azv_integral(const BinaryTree& t, const SeriesEvalConfig& series, const QuadEvalConfig& quad,
                        IntegralPath path = IntegralPath::Series);

/// Integral-word combinations through the chosen path.
EvalResult eval_lincomb_integral(const LinComb<IntegralWord>& c, const SeriesEvalConfig& series,
                                 const QuadEvalConfig& quad, IntegralPath path);

}  // namespace dzeta
