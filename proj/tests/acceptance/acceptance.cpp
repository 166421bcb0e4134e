// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dzeta/shintani.hpp"
#include "dzeta/trees.hpp"
#include "dzeta/verify.hpp"
#include "dzeta/words.hpp"
#include "dzeta/zeta.hpp"

using namespace dzeta;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double time_limit;  // seconds, 0 when the criterion has none
  std::function<Outcome()> run;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

Outcome from_reports(const std::vector<CheckReport>& reports) {
  Outcome out{true, ""};
  std::size_t cases = 0;
  for (const auto& r : reports) {
    cases += r.cases;
    if (!r.passed) {
      out.passed = false;
      out.detail += r.name + ": " + r.detail + "; ";
    }
  }
  if (out.passed) out.detail = std::to_string(reports.size()) + " checks, " + std::to_string(cases) + " cases";
  return out;
}

Outcome quasi_shuffle_example() {
  const auto got = qshuffle(parse_series_word("1 2"), parse_series_word("3 2"));
  const std::vector<std::pair<const char*, int>> listed{
      {"1 2 3 2", 1}, {"1 3 2 2", 2}, {"1 5 2", 1}, {"1 3 4", 1}, {"3 2 1 2", 1},
      {"3 1 2 2", 2}, {"3 3 2", 1},   {"3 1 4", 1}, {"4 2 2", 2}, {"4 4", 1}};
  LinComb<SeriesWord> expected;
  for (const auto& [w, c] : listed) expected.add_term(parse_series_word(w), Rational(c));
  return {got == expected && got.total_weight() == Rational(13), "got " + to_string(got)};
}

Outcome shuffle_example() {
  const auto got = shuffle(parse_integral_word("xy"), parse_integral_word("xy"));
  return {got == parse_lincomb<IntegralWord>("4*xxyy + 2*xyxy"), "got " + to_string(got)};
}

Outcome zeta2() {
  SeriesEvalConfig cfg;
  cfg.cutoff = 100000;
  const auto r = mzv_series(parse_series_word("2"), cfg);
  const double gap = std::abs(r.value - 1.6449340668);
  return {gap <= *r.tail_bound && *r.tail_bound <= 2e-5,
          fmt("value %.12f, gap %.3e, tail bound %.3e", r.value, gap, *r.tail_bound)};
}

Outcome kontsevich() {
  SeriesEvalConfig series;
  series.cutoff = 100000;
  QuadEvalConfig quad;
  quad.nodes_per_axis = 64;
  const double g1 = std::abs(mzv_integral_quad(parse_integral_word("xy"), quad).value -
                             mzv_series(parse_series_word("2"), series).value);
  const double g2 = std::abs(mzv_integral_quad(parse_integral_word("xyy"), quad).value -
                             mzv_series(parse_series_word("2 1"), series).value);
  return {g1 < 1e-3 && g2 < 5e-3, fmt("gap xy %.3e (< 1e-3), gap xyy %.3e (< 5e-3)", g1, g2)};
}

Outcome worked_relation() {
  const auto t1 = parse_vertex_tree("N{2}(N{1},N{1})");
  const auto t2 = parse_vertex_tree("N{2}");
  const auto rhs = flatten_series(tree_product(t1, t2, Piece::Full));
  SeriesEvalConfig cfg;
  cfg.cutoff = 100000;
  const double a = eval_lincomb_words(flatten_series(t1), cfg).value;
  const double b = eval_lincomb_words(flatten_series(t2), cfg).value;
  const double c = eval_lincomb_words(rhs, cfg).value;
  const double gap = std::abs(a * b - c);
  // The fifteen displayed summands of the relation, repeated words included.
  const std::vector<std::pair<const char*, int>> displayed{
      {"2 1 2 1", 1}, {"2 1 1 2", 2}, {"2 1 3", 1}, {"2 2 2", 1}, {"2 2 1 1", 2}, {"2 1 2 1", 1}, {"2 3 1", 1},
      {"2 2 2", 1},   {"2 3 1", 1},   {"2 1 3", 1}, {"2 4", 1},   {"2 2 1 1", 2}, {"2 2 2", 1},   {"4 1 1", 2},
      {"4 2", 1}};
  LinComb<SeriesWord> expected;
  for (const auto& [w, k] : displayed) expected.add_term(parse_series_word(w), Rational(k));
  const bool count_ok = displayed.size() == 15 && rhs == expected;
  return {gap < 1e-4 && count_ok,
          fmt("lhs %.10f, rhs %.10f, gap %.3e (< 1e-4)", a * b, c, gap) + (count_ok ? ", expansion matches the 15 displayed terms" : ", expansion differs: " + to_string(rhs))};
}

Outcome shintani_theorem() {
  std::vector<std::string> trees{"B{x}(B{y}(|,|),B{y}(|,|))"};
  for (const auto& t : shintani_sample_trees()) trees.push_back(t);
  SeriesEvalConfig series;
  series.cutoff = 100000;
  Outcome out{true, ""};
  for (const auto& text : trees) {
    const auto t = parse_binary_tree(text);
    const double s = shintani_eval(shintani_datum(t), 2000);
    const double z = azv_integral(t, series, QuadEvalConfig{}, IntegralPath::Series).value;
    const double gap = std::abs(s - z);
    out.passed = out.passed && gap < 1e-2;
    out.detail += text + fmt(" gap %.3e; ", gap);
  }
  return out;
}

Outcome shintani_extraction() {
  const auto d = shintani_datum(parse_binary_tree("B{x}(B{x}(B{y},B{y}),B{y}(|,B{x}(|,B{y})))"));
  // Columns: the four y-vertices in post-order (red, yellow, blue, brown).
  std::multiset<std::pair<std::vector<int>, Letter>> expected{
      {{1, 0, 0, 0}, 1}, {{0, 1, 0, 0}, 1}, {{1, 1, 0, 0}, 1},
      {{0, 0, 1, 0}, 2}, {{0, 0, 1, 1}, 1}, {{1, 1, 1, 1}, 1}};
  std::multiset<std::pair<std::vector<int>, Letter>> got;
  for (std::size_t i = 0; i < d.rows(); ++i) got.insert({d.matrix[i], d.exponents[i]});
  return {d.rows() == 6 && d.cols() == 4 && got == expected && to_string(d.exponents) == "1 1 1 2 1 1",
          "omega " + to_string(d.exponents)};
}

template <class Tree>
bool random_pairs_convergent(const std::vector<Tree>& all, bool (*pred)(const Tree&), std::mt19937& rng,
                             std::string& detail) {
  std::vector<Tree> pool;
  for (const auto& t : all) {
    if (pred(t)) pool.push_back(t);
  }
  for (int trial = 0; trial < 200; ++trial) {
    const auto& t = pool[rng() % pool.size()];
    const auto& s = pool[rng() % pool.size()];
    for (const auto& [u, c] : tree_product(t, s, Piece::Full)) {
      if (!pred(u)) {
        detail = t.text() + " * " + s.text() + " has divergent term " + u.text();
        return false;
      }
    }
  }
  return true;
}

Outcome convergence_preserved() {
  std::mt19937 rng(20240617u);
  std::string detail = "200 pairs each of angle, vertex and binary trees";
  const bool ok = random_pairs_convergent(enumerate_angle_trees(4, {1, 2, 3}), is_convergent_angle_tree, rng, detail) &&
                  random_pairs_convergent(enumerate_vertex_trees(4, {1, 2, 3}), is_convergent_vertex_tree, rng, detail) &&
                  random_pairs_convergent(enumerate_binary_trees(4), is_convergent_binary_tree, rng, detail);
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "quasi-shuffle example", 0.1, quasi_shuffle_example},
      {2, "shuffle example", 0.0, shuffle_example},
      {3, "axiom suites", 60.0, [] { return from_reports(run_axiom_suite(3, {1, 2})); }},
      {4, "surjection vs inductive products", 0.0, [] { return from_reports(run_oracle_suite(4)); }},
      {5, "morphism suite", 0.0, [] { return from_reports(run_morphism_suite(3)); }},
      {6, "zeta(2) with tail bound", 0.0, zeta2},
      {7, "series vs quadrature, depth <= 2", 30.0, kontsevich},
      {8, "worked product relation", 0.0, worked_relation},
      {9, "Shintani sums vs integral values", 60.0, shintani_theorem},
      {10, "Shintani matrix and exponents", 0.0, shintani_extraction},
      {11, "convergence preserved by products", 0.0, convergence_preserved},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      out.passed = false;
      out.detail += fmt(" [over time limit %.1f s]", c.time_limit);
    }
    failures += out.passed ? 0 : 1;
    std::printf("%s %2d %-36s %8.3f s  %s\n", out.passed ? "PASS" : "FAIL", c.id, c.title, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
