#include "dzeta/zeta.hpp"

#include <cmath>
#include <numbers>

namespace dzeta {

void SeriesEvalConfig::validate() const {
  if (cutoff < 2) throw InvalidConfig("series cutoff must be >= 2");
}

void QuadEvalConfig::validate() const {
  if (nodes_per_axis < 8) throw InvalidConfig("quadrature needs at least 8 nodes per axis");
  if (max_depth < 1 || max_depth > 4) throw InvalidConfig("quadrature depth must lie in 1..4");
}

namespace {

void require_convergent(const SeriesWord& w) {
  if (!is_convergent_series_word(w)) {
    throw DivergentWord("word (" + to_string(w) + ") starts with 1; the series diverges");
  }
}

// n^{-e} by binary powering.
long double inverse_power(std::size_t n, Letter e) {
  long double base = 1.0L / static_cast<long double>(n);
  long double out = 1.0L;
  while (e) {
    if (e & 1U) out *= base;
    base *= base;
    e >>= 1U;
  }
  return out;
}

}  // namespace

EvalResult mzv_series(const SeriesWord& w, const SeriesEvalConfig& cfg) {
  cfg.validate();
  require_convergent(w);
  EvalResult out;
  if (w.empty()) {
    out.value = 1.0;
    if (cfg.report_tail) out.tail_bound = 0.0;
    return out;
  }
  const std::size_t N = cfg.cutoff;
  const std::size_t k = w.size();

  // stage[n] holds the summand of the current depth at outer index n; totals[j]
  // is the stage-j partial sum over n <= N.
  std::vector<long double> stage(N + 1, 0.0L);
  std::vector<long double> totals(k, 0.0L);
  for (std::size_t j = k; j-- > 0;) {
    const Letter e = w[j];
    long double prefix = 0.0L;
    long double total = 0.0L;
    for (std::size_t n = 1; n <= N; ++n) {
      const long double weight = inverse_power(n, e);
      const long double below = j + 1 == k ? 1.0L : prefix;
      prefix += stage[n];
      stage[n] = weight * below;
      total += stage[n];
    }
    totals[j] = total;
  }
  out.value = static_cast<double>(totals[0]);

  if (cfg.report_tail) {
    // For n > N the inner sums are bounded by polynomials in
    // λ(n) = H_{n-1} - H_N, stored as coefficients of λ^i / i!.
    const long double np1 = static_cast<long double>(N) + 1.0L;
    std::vector<long double> poly{1.0L};
    for (std::size_t j = k; j-- > 1;) {
      const long double scale = std::pow(np1, 1.0L - static_cast<long double>(w[j]));
      std::vector<long double> next(poly.size() + 1);
      next[0] = totals[j];
      for (std::size_t i = 0; i < poly.size(); ++i) next[i + 1] = poly[i] * scale;
      poly = std::move(next);
    }
    const long double w1 = static_cast<long double>(w[0]);
    long double sum = 0.0L;
    long double denom = w1 - 1.0L;
    for (long double c : poly) {
      sum += c / denom;
      denom *= (w1 - 1.0L);
    }
    const long double lead =
        std::pow(1.0L + 1.0L / np1, w1) * std::pow(static_cast<long double>(N), 1.0L - w1);
    out.tail_bound = static_cast<double>(lead * sum);
  }
  return out;
}

QuadratureRule gauss_legendre01(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t m = 2; m <= n; ++m) {
        const double p2 = ((2.0 * static_cast<double>(m) - 1.0) * x * p1 - (static_cast<double>(m) - 1.0) * p0) /
                          static_cast<double>(m);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

namespace {

struct GradedAxis {
  std::vector<double> v;
  std::vector<double> one_minus_v;
  std::vector<double> weight;
};

// v = s^2 (3 - 2s) clusters nodes at both ends, where 1/u and 1/(1-u) blow up.
GradedAxis graded_axis(std::size_t n) {
  const auto rule = gauss_legendre01(n);
  GradedAxis axis;
  for (std::size_t i = 0; i < n; ++i) {
    const double s = rule.nodes[i];
    axis.v.push_back(s * s * (3.0 - 2.0 * s));
    axis.one_minus_v.push_back((1.0 - s) * (1.0 - s) * (1.0 + 2.0 * s));
    axis.weight.push_back(rule.weights[i] * 6.0 * s * (1.0 - s));
  }
  return axis;
}

double integrate_from(const IntegralWord& w, const GradedAxis& axis, std::size_t depth, double u,
                      double one_minus_u) {
  const std::size_t n = axis.v.size();
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const double ui = u * axis.v[a];
    const double one_minus_ui = one_minus_u + u * axis.one_minus_v[a];
    const double g = w[depth] == Bin::x ? 1.0 / ui : 1.0 / one_minus_ui;
    // Jacobian of u_{i+1} = u_i v_{i+1} contributes the factor u_i.
    double term = axis.weight[a] * u * g;
    if (depth + 1 < w.size()) term *= integrate_from(w, axis, depth + 1, ui, one_minus_ui);
    sum += term;
  }
  return sum;
}

}  // namespace

EvalResult mzv_integral_quad(const IntegralWord& w, const QuadEvalConfig& cfg) {
  cfg.validate();
  if (!is_convergent_integral_word(w)) {
    throw DivergentWord("word " + to_string(w) + " is not of the form x...y; the integral diverges");
  }
  if (w.size() > cfg.max_depth) {
    throw DepthExceeded("word " + to_string(w) + " has depth " + std::to_string(w.size()) +
                        ", quadrature is capped at " + std::to_string(cfg.max_depth));
  }
  if (w.empty()) return {1.0, std::nullopt};
  const auto axis = graded_axis(cfg.nodes_per_axis);
  // Outermost level: u_1 = v_1 with unit Jacobian, i.e. "u_0" = 1 and 1 - u_0 = 0.
  return {integrate_from(w, axis, 0, 1.0, 0.0), std::nullopt};
}

EvalResult eval_lincomb_words(const LinComb<SeriesWord>& c, const SeriesEvalConfig& cfg) {
  cfg.validate();
  for (const auto& [w, coeff] : c) require_convergent(w);
  EvalResult out;
  long double value = 0.0L;
  long double tail = 0.0L;
  for (const auto& [w, coeff] : c) {
    const auto r = mzv_series(w, cfg);
    value += static_cast<long double>(coeff.to_double()) * r.value;
    if (r.tail_bound) tail += static_cast<long double>(std::abs(coeff.to_double())) * *r.tail_bound;
  }
  out.value = static_cast<double>(value);
  if (cfg.report_tail) out.tail_bound = static_cast<double>(tail);
  return out;
}

EvalResult azv_series(const VertexTree& t, const SeriesEvalConfig& cfg) {
  if (!is_convergent_vertex_tree(t)) {
    throw NotConvergent("tree " + t.text() + " has its root decorated 1; the arborified series diverges");
  }
  return eval_lincomb_words(flatten_series(t), cfg);
}

namespace {

struct FlatVertex {
  std::size_t parent;
  Letter decoration;
};

void collect(const VertexTree& t, std::size_t parent, std::vector<FlatVertex>& out) {
  if (t.is_leaf()) return;
  const std::size_t self = out.size();
  out.push_back({parent, t.decoration()});
  for (const auto& c : t.children()) collect(c, self, out);
}

// Indices are chosen in pre-order, so every parent is fixed before its children.
long double direct_sum(const std::vector<FlatVertex>& vs, const std::vector<std::vector<double>>& pow_table,
                       std::vector<std::size_t>& index, std::size_t depth, std::size_t cutoff) {
  const std::size_t bound = depth == 0 ? cutoff : index[vs[depth].parent] - 1;
  const auto& table = pow_table[depth];
  if (depth + 1 == vs.size()) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t k = 1;
    for (; k + 3 <= bound; k += 4) {
      acc[0] += table[k];
      acc[1] += table[k + 1];
      acc[2] += table[k + 2];
      acc[3] += table[k + 3];
    }
    for (; k <= bound; ++k) acc[0] += table[k];
    return static_cast<long double>((acc[0] + acc[1]) + (acc[2] + acc[3]));
  }
  long double sum = 0.0L;
  for (std::size_t k = 1; k <= bound; ++k) {
    index[depth] = k;
    sum += table[k] * direct_sum(vs, pow_table, index, depth + 1, cutoff);
  }
  return sum;
}

}  // namespace

double azv_direct(const VertexTree& t, std::size_t cutoff) {
  if (t.is_leaf()) return 1.0;
  if (t.internal_count() > 4) {
    throw TooManyVertices("direct summation is limited to 4 internal vertices, tree " + t.text() + " has " +
                          std::to_string(t.internal_count()));
  }
  if (!is_convergent_vertex_tree(t)) {
    throw NotConvergent("tree " + t.text() + " has its root decorated 1; the arborified series diverges");
  }
  if (cutoff < 1) throw InvalidConfig("cutoff must be >= 1");
  std::vector<FlatVertex> vs;
  collect(t, 0, vs);
  std::vector<std::vector<double>> pow_table;
  for (const auto& v : vs) {
    std::vector<double> row(cutoff + 1, 0.0);
    for (std::size_t k = 1; k <= cutoff; ++k) row[k] = std::pow(static_cast<double>(k), -static_cast<double>(v.decoration));
    pow_table.push_back(std::move(row));
  }
  std::vector<std::size_t> index(vs.size(), 0);
  return static_cast<double>(direct_sum(vs, pow_table, index, 0, cutoff));
}

EvalResult eval_lincomb_integral(const LinComb<IntegralWord>& c, const SeriesEvalConfig& series,
                                 const QuadEvalConfig& quad, IntegralPath path) {
  series.validate();
  quad.validate();
  for (const auto& [w, coeff] : c) {
    if (!is_convergent_integral_word(w)) {
      throw DivergentWord("word " + to_string(w) + " is not of the form x...y; the integral diverges");
    }
  }
  long double value = 0.0L;
  long double tail = 0.0L;
  bool has_tail = series.report_tail;
  for (const auto& [w, coeff] : c) {
    EvalResult r;
    if (path == IntegralPath::Quadrature && w.size() <= quad.max_depth) {
      r = mzv_integral_quad(w, quad);
      has_tail = false;
    } else {
      r = mzv_series(unbinarize(w), series);
    }
    value += static_cast<long double>(coeff.to_double()) * r.value;
    if (r.tail_bound) tail += static_cast<long double>(std::abs(coeff.to_double())) * *r.tail_bound;
  }
  EvalResult out;
  out.value = static_cast<double>(value);
  if (has_tail) out.tail_bound = static_cast<double>(tail);
  return out;
}

EvalResult azv_integral(const BinaryTree& t, const SeriesEvalConfig& series, const QuadEvalConfig& quad,
                        IntegralPath path) {
  if (!is_convergent_binary_tree(t)) {
    throw NotConvergent("tree " + t.text() +
                        " is not convergent: the root must be x and every vertex with two leaf children y");
  }
  return eval_lincomb_integral(flatten_int(t), series, quad, path);
}

}  // namespace dzeta
