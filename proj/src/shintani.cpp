#include "dzeta/shintani.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace dzeta {

namespace {

struct Visit {
  VertexLabel label;
  const BinaryTree* tree;
};

void post_order(const BinaryTree& t, const VertexLabel& label, std::vector<Visit>& out) {
  if (t.is_leaf()) return;
  post_order(t.children()[0], label + "L", out);
  post_order(t.children()[1], label + "R", out);
  out.push_back({label, &t});
}

std::vector<Visit> internal_vertices(const BinaryTree& t) {
  if (t.is_leaf()) throw LeafInput("the leaf has no internal vertices");
  std::vector<Visit> out;
  post_order(t, "r", out);
  return out;
}

bool is_bifurcated(const BinaryTree& v) {
  if (v.decoration() == Bin::y) return true;
  return !v.children()[0].is_leaf() && !v.children()[1].is_leaf();
}

bool is_ancestor_or_equal(const VertexLabel& a, const VertexLabel& b) { return b.compare(0, a.size(), a) == 0; }

}  // namespace

std::vector<VertexLabel> bifurcation_set(const BinaryTree& t) {
  std::vector<VertexLabel> out;
  for (const auto& v : internal_vertices(t)) {
    if (is_bifurcated(*v.tree)) out.push_back(v.label);
  }
  return out;
}

SegmentDecomposition segment_decomposition(const BinaryTree& t) {
  const auto vertices = internal_vertices(t);
  std::set<VertexLabel> bifurcated;
  SegmentDecomposition out;
  for (const auto& v : vertices) {
    if (is_bifurcated(*v.tree)) {
      bifurcated.insert(v.label);
      out.bifurcation_set.push_back(v.label);
    }
  }
  for (const auto& b : out.bifurcation_set) {
    std::vector<VertexLabel> path{b};
    VertexLabel cur = b;
    while (cur.size() > 1) {
      VertexLabel parent = cur.substr(0, cur.size() - 1);
      if (bifurcated.count(parent)) break;
      path.push_back(parent);
      cur = std::move(parent);
    }
    std::reverse(path.begin(), path.end());
    out.segments.push_back(std::move(path));
  }
  return out;
}

ShintaniDatum shintani_datum(const BinaryTree& t) {
  if (!is_convergent_binary_tree(t)) {
    throw NotConvergent("tree " + t.text() + " is not convergent; the Shintani datum is only defined for convergent trees");
  }
  const auto seg = segment_decomposition(t);
  ShintaniDatum d;
  d.row_labels = seg.bifurcation_set;
  for (const auto& v : internal_vertices(t)) {
    if (v.tree->decoration() == Bin::y) d.col_labels.push_back(v.label);
  }
  std::vector<Letter> exponents;
  std::size_t covered = 0;
  for (std::size_t i = 0; i < d.row_labels.size(); ++i) {
    std::vector<int> row;
    for (const auto& c : d.col_labels) row.push_back(is_ancestor_or_equal(d.row_labels[i], c) ? 1 : 0);
    d.matrix.push_back(std::move(row));
    exponents.push_back(seg.segments[i].size());
    covered += seg.segments[i].size();
  }
  d.exponents = SeriesWord(std::move(exponents));

  if (covered != t.internal_count()) throw InvalidStructure("segments do not partition the internal vertices");
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (std::none_of(d.matrix[i].begin(), d.matrix[i].end(), [](int a) { return a != 0; })) {
      throw InvalidStructure("Shintani matrix row " + d.row_labels[i] + " is zero");
    }
  }
  for (std::size_t j = 0; j < d.cols(); ++j) {
    if (std::none_of(d.matrix.begin(), d.matrix.end(), [&](const auto& row) { return row[j] != 0; })) {
      throw InvalidStructure("Shintani matrix column " + d.col_labels[j] + " is zero");
    }
  }
  return d;
}

namespace {

struct Row {
  std::vector<int> coeffs;
  Letter exponent;
  friend bool operator<(const Row& a, const Row& b) {
    return a.coeffs != b.coeffs ? a.coeffs < b.coeffs : a.exponent < b.exponent;
  }
};

}  // namespace

double shintani_eval(const ShintaniDatum& d, std::size_t cutoff) {
  const std::size_t r = d.cols();
  if (r > 3) {
    throw TooManyColumns("Shintani evaluation costs N^r; r = " + std::to_string(r) + " exceeds the cap of 3");
  }
  if (r == 0 || d.rows() == 0) throw InvalidStructure("empty Shintani datum");
  if (d.exponents.size() != d.rows()) throw InvalidStructure("one exponent per matrix row is required");
  if (cutoff < 1) throw InvalidConfig("cutoff must be >= 1");

  // A canonical row order makes the result bit-identical under row permutations.
  std::vector<Row> rows;
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (d.matrix[i].size() != r) throw InvalidStructure("ragged Shintani matrix");
    for (int a : d.matrix[i]) {
      if (a < 0) throw InvalidStructure("Shintani matrix entries must be non-negative");
    }
    rows.push_back({d.matrix[i], d.exponents[i]});
  }
  std::sort(rows.begin(), rows.end());

  std::size_t max_form = 0;
  for (const auto& row : rows) {
    std::size_t s = 0;
    for (int a : row.coeffs) s += static_cast<std::size_t>(a);
    max_form = std::max(max_form, s * cutoff);
  }
  std::map<Letter, std::vector<double>> tables;
  for (const auto& row : rows) {
    auto& table = tables[row.exponent];
    if (!table.empty()) continue;
    table.assign(max_form + 1, 0.0);
    for (std::size_t v = 1; v <= max_form; ++v) table[v] = std::pow(static_cast<double>(v), -static_cast<double>(row.exponent));
  }

  // Rows split by whether they involve the innermost column.
  std::vector<const Row*> outer_rows;
  std::vector<const Row*> inner_rows;
  for (const auto& row : rows) (row.coeffs[r - 1] ? inner_rows : outer_rows).push_back(&row);

  std::vector<std::size_t> m(r, 1);
  std::vector<const double*> inner_ptr(inner_rows.size());
  std::vector<std::size_t> inner_step(inner_rows.size());
  long double total = 0.0L;

  auto inner_sum = [&]() -> long double {
    double constant = 1.0;
    for (const Row* row : outer_rows) {
      std::size_t base = 0;
      for (std::size_t j = 0; j + 1 < r; ++j) base += static_cast<std::size_t>(row->coeffs[j]) * m[j];
      constant *= tables.at(row->exponent)[base];
    }
    for (std::size_t q = 0; q < inner_rows.size(); ++q) {
      std::size_t base = 0;
      for (std::size_t j = 0; j + 1 < r; ++j) base += static_cast<std::size_t>(inner_rows[q]->coeffs[j]) * m[j];
      inner_step[q] = static_cast<std::size_t>(inner_rows[q]->coeffs[r - 1]);
      inner_ptr[q] = tables.at(inner_rows[q]->exponent).data() + base;
    }
    double acc = 0.0;
    for (std::size_t k = 1; k <= cutoff; ++k) {
      double p = 1.0;
      for (std::size_t q = 0; q < inner_ptr.size(); ++q) p *= inner_ptr[q][inner_step[q] * k];
      acc += p;
    }
    return static_cast<long double>(constant) * acc;
  };

  if (r == 1) {
    total = inner_sum();
  } else if (r == 2) {
    for (m[0] = 1; m[0] <= cutoff; ++m[0]) total += inner_sum();
  } else {
    for (m[0] = 1; m[0] <= cutoff; ++m[0]) {
      for (m[1] = 1; m[1] <= cutoff; ++m[1]) total += inner_sum();
    }
  }
  return static_cast<double>(total);
}

}  // namespace dzeta
