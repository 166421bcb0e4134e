#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "dzeta/trees.hpp"
#include "dzeta/words.hpp"

namespace dzeta {

/// Vertices are named by their path from the root: `r`, `rL`, `rLR`, ...
using VertexLabel = std::string;

/// y-vertices and x-vertices whose two children are both internal, in
/// post-order (children left to right, then the vertex).
std::vector<VertexLabel> bifurcation_set(const BinaryTree& t);

struct SegmentDecomposition {
  std::vector<VertexLabel> bifurcation_set;
  /// segments[i] runs from its topmost vertex down to bifurcation_set[i].
  std::vector<std::vector<VertexLabel>> segments;
};

/// The chain above each bifurcated vertex up to (excluding) the next
/// bifurcated ancestor, or up to the root.
SegmentDecomposition segment_decomposition(const BinaryTree& t);

struct ShintaniDatum {
  std::vector<std::vector<int>> matrix;  // rows: bifurcated vertices, columns: y-vertices
  SeriesWord exponents;
  std::vector<VertexLabel> row_labels;
  std::vector<VertexLabel> col_labels;

  std::size_t rows() const { return matrix.size(); }
  std::size_t cols() const { return col_labels.size(); }
};

/// a_ij = 1 iff row vertex i is an ancestor of (or equal to) y-vertex j;
/// exponents are segment lengths. Rows and columns follow post-order.
ShintaniDatum shintani_datum(const BinaryTree& t);

/// Σ over 1 <= m_1..m_r <= N of Π_i (Σ_j a_ij m_j)^(-ω_i), for r <= 3 columns.
double shintani_eval(const ShintaniDatum& d, std::size_t cutoff);

}  // namespace dzeta
