#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dzeta/algebra.hpp"
#include "dzeta/lincomb.hpp"
#include "dzeta/words.hpp"

namespace dzeta {

/// Planar rooted tree whose internal vertices carry a `Traits::Deco`.
/// A default-constructed tree is the leaf `|`. Nodes are shared and immutable.
template <class Traits>
class PlanarTree {
 public:
  using traits = Traits;
  using Deco = typename Traits::Deco;

  PlanarTree() = default;

  static PlanarTree leaf() { return {}; }

  /// Validates arity (>= 2, or exactly 2 for binary trees) and the decoration.
  static PlanarTree node(std::vector<PlanarTree> children, Deco deco) {
    if (children.size() < 2) throw InvalidStructure("internal vertices need at least two children");
    Traits::validate(deco, children.size());
    auto n = std::make_shared<Node>();
    n->leaves = 0;
    n->internal = 1;
    n->text = Traits::deco_text(deco);
    n->text += '(';
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) n->text += ',';
      n->leaves += children[i].leaves();
      n->internal += children[i].internal_count();
      n->text += children[i].text();
    }
    n->text += ')';
    n->children = std::move(children);
    n->deco = std::move(deco);
    PlanarTree t;
    t.node_ = std::move(n);
    return t;
  }

  bool is_leaf() const { return !node_; }

  const std::vector<PlanarTree>& children() const {
    static const std::vector<PlanarTree> none;
    return node_ ? node_->children : none;
  }

  const Deco& decoration() const {
    if (!node_) throw LeafInput("the leaf carries no decoration");
    return node_->deco;
  }

  std::size_t leaves() const { return node_ ? node_->leaves : 1; }
  std::size_t internal_count() const { return node_ ? node_->internal : 0; }

  const std::string& text() const {
    static const std::string bar = "|";
    return node_ ? node_->text : bar;
  }

  friend bool operator==(const PlanarTree& a, const PlanarTree& b) {
    return a.node_ == b.node_ || a.text() == b.text();
  }

  /// Canonical order: leaf count, then serialized text.
  friend std::strong_ordering operator<=>(const PlanarTree& a, const PlanarTree& b) {
    if (a.leaves() != b.leaves()) return a.leaves() <=> b.leaves();
    return a.text().compare(b.text()) <=> 0;
  }

 private:
  struct Node {
    std::vector<PlanarTree> children;
    Deco deco;
    std::size_t leaves = 0;
    std::size_t internal = 0;
    std::string text;
  };
  std::shared_ptr<const Node> node_;
};

/// Angle decorations: a vertex with c children carries c - 1 letters.
/// Text `V[a1,...,ak](c1,...,c{k+1})`; `V[a1,...,ak]` alone has leaf children.
struct AngleTraits {
  using Deco = std::vector<Letter>;
  static constexpr bool has_merge = true;
  static void validate(const Deco& deco, std::size_t arity);
  static Deco merge(const Deco& a, const Deco& b);
  static std::string deco_text(const Deco& deco);
  static Deco parse_deco(std::string_view text, std::size_t& pos);
  static std::size_t default_arity(const Deco& deco) { return deco.size() + 1; }
};

/// Vertex decorations d >= 1 with d >= (children - 1). Text `N{d}(c1,...,ck)`;
/// `N{d}` alone means `N{d}(|,|)`.
struct VertexTraits {
  using Deco = Letter;
  static constexpr bool has_merge = true;
  static void validate(const Deco& deco, std::size_t arity);
  static Deco merge(const Deco& a, const Deco& b) { return checked_add(a, b); }
  static std::string deco_text(const Deco& deco);
  static Deco parse_deco(std::string_view text, std::size_t& pos);
  static std::size_t default_arity(const Deco&) { return 2; }
};

/// Binary trees over {x,y}. Text `B{x}(l,r)`; `B{y}` alone means `B{y}(|,|)`.
struct BinaryTraits {
  using Deco = Bin;
  static constexpr bool has_merge = false;
  static void validate(const Deco& deco, std::size_t arity);
  static Deco merge(const Deco&, const Deco&) { throw InvalidStructure("binary trees have no middle product"); }
  static std::string deco_text(const Deco& deco);
  static Deco parse_deco(std::string_view text, std::size_t& pos);
  static std::size_t default_arity(const Deco&) { return 2; }
};

using AngleTree = PlanarTree<AngleTraits>;
using VertexTree = PlanarTree<VertexTraits>;
using BinaryTree = PlanarTree<BinaryTraits>;

namespace detail {

template <class Traits>
PlanarTree<Traits> parse_tree_at(std::string_view text, std::size_t& pos) {
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  if (pos >= text.size()) throw ParseError("unexpected end of tree", pos);
  if (text[pos] == '|') {
    ++pos;
    return PlanarTree<Traits>::leaf();
  }
  const std::size_t start = pos;
  auto deco = Traits::parse_deco(text, pos);
  skip();
  std::vector<PlanarTree<Traits>> children;
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    while (true) {
      children.push_back(parse_tree_at<Traits>(text, pos));
      skip();
      if (pos >= text.size()) throw ParseError("unterminated child list", pos);
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError(std::string("expected ',' or ')', found '") + text[pos] + "'", pos);
    }
  } else {
    children.assign(Traits::default_arity(deco), PlanarTree<Traits>::leaf());
  }
  try {
    return PlanarTree<Traits>::node(std::move(children), std::move(deco));
  } catch (const InvalidStructure& e) {
    throw ParseError(e.what(), start);
  } catch (const LetterOverflow& e) {
    throw ParseError(e.what(), start);
  }
}

}  // namespace detail

template <class Traits>
PlanarTree<Traits> parse_tree(std::string_view text, std::size_t offset = 0) {
  std::size_t pos = 0;
  try {
    auto t = detail::parse_tree_at<Traits>(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("trailing characters after tree", pos);
    return t;
  } catch (const ParseError& e) {
    if (offset == 0) throw;
    throw ParseError(std::string(e.what()).substr(0, std::string(e.what()).rfind(" (at position")),
                     e.position() + offset);
  }
}

inline AngleTree parse_angle_tree(std::string_view text) { return parse_tree<AngleTraits>(text); }
inline VertexTree parse_vertex_tree(std::string_view text) { return parse_tree<VertexTraits>(text); }
inline BinaryTree parse_binary_tree(std::string_view text) { return parse_tree<BinaryTraits>(text); }

template <class Traits>
std::string to_string(const PlanarTree<Traits>& t) {
  return t.text();
}

template <class Traits>
struct BasisText<PlanarTree<Traits>> {
  static std::string term(const PlanarTree<Traits>& t) { return t.text(); }
  static PlanarTree<Traits> parse_term(std::string_view text, std::size_t offset) {
    return parse_tree<Traits>(text, offset);
  }
};

// ---------------------------------------------------------------------------
// Comb decomposition and the grafting action

enum class CombSide { Left, Right };

template <class Tree>
struct CombPart {
  std::vector<Tree> forest;
  typename Tree::Deco word;
};

template <class Tree>
struct CombDecomposition {
  CombSide side = CombSide::Right;
  std::vector<CombPart<Tree>> parts;
};

/// Right: walk the rightmost branch, each part holds the node's children minus
/// the last one. Left: walk the leftmost branch, dropping the first child.
template <class Traits>
CombDecomposition<PlanarTree<Traits>> comb_decompose(const PlanarTree<Traits>& t, CombSide side) {
  if (t.is_leaf()) throw LeafInput("comb decomposition of the leaf");
  CombDecomposition<PlanarTree<Traits>> out;
  out.side = side;
  const PlanarTree<Traits>* cur = &t;
  while (!cur->is_leaf()) {
    const auto& ch = cur->children();
    CombPart<PlanarTree<Traits>> part;
    part.word = cur->decoration();
    if (side == CombSide::Right) {
      part.forest.assign(ch.begin(), ch.end() - 1);
      cur = &ch.back();
    } else {
      part.forest.assign(ch.begin() + 1, ch.end());
      cur = &ch.front();
    }
    out.parts.push_back(std::move(part));
  }
  return out;
}

template <class Traits>
PlanarTree<Traits> comb_reassemble(const CombDecomposition<PlanarTree<Traits>>& comb) {
  PlanarTree<Traits> cur;
  for (auto it = comb.parts.rbegin(); it != comb.parts.rend(); ++it) {
    std::vector<PlanarTree<Traits>> children;
    if (comb.side == CombSide::Right) {
      children = it->forest;
      children.push_back(cur);
    } else {
      children.push_back(cur);
      children.insert(children.end(), it->forest.begin(), it->forest.end());
    }
    cur = PlanarTree<Traits>::node(std::move(children), it->word);
  }
  return cur;
}

/// σ(t, s): the ladder 1..n where node m receives the left forest of t's
/// right comb for a preimage i <= k, the right forest of s's left comb for a
/// preimage j > k, and the merged decoration on doubleton fibers.
template <class Traits>
PlanarTree<Traits> sigma_action(const SurjectionMap& sigma, const PlanarTree<Traits>& t, const PlanarTree<Traits>& s) {
  const auto ct = comb_decompose(t, CombSide::Right);
  const auto cs = comb_decompose(s, CombSide::Left);
  const int k = static_cast<int>(ct.parts.size());
  const int l = static_cast<int>(cs.parts.size());
  if (sigma.k != k || sigma.l != l) {
    throw ArityMismatch("map is a (" + std::to_string(sigma.k) + "," + std::to_string(sigma.l) +
                        ")-surjection but the combs have lengths (" + std::to_string(k) + "," +
                        std::to_string(l) + ")");
  }
  std::vector<int> lo(static_cast<std::size_t>(sigma.max) + 1, 0);
  std::vector<int> hi(static_cast<std::size_t>(sigma.max) + 1, 0);
  for (int i = 1; i <= k + l; ++i) {
    const int m = sigma.values[static_cast<std::size_t>(i - 1)];
    (i <= k ? lo : hi)[static_cast<std::size_t>(m)] = i;
  }
  PlanarTree<Traits> cur;
  for (int m = sigma.max; m >= 1; --m) {
    const int i = lo[static_cast<std::size_t>(m)];
    const int j = hi[static_cast<std::size_t>(m)];
    std::vector<PlanarTree<Traits>> children;
    if (i) {
      const auto& f = ct.parts[static_cast<std::size_t>(i - 1)].forest;
      children.insert(children.end(), f.begin(), f.end());
    }
    children.push_back(cur);
    if (j) {
      const auto& f = cs.parts[static_cast<std::size_t>(j - k - 1)].forest;
      children.insert(children.end(), f.begin(), f.end());
    }
    typename Traits::Deco deco;
    if (i && j) {
      deco = Traits::merge(ct.parts[static_cast<std::size_t>(i - 1)].word,
                           cs.parts[static_cast<std::size_t>(j - k - 1)].word);
    } else {
      deco = i ? ct.parts[static_cast<std::size_t>(i - 1)].word : cs.parts[static_cast<std::size_t>(j - k - 1)].word;
    }
    cur = PlanarTree<Traits>::node(std::move(children), std::move(deco));
  }
  return cur;
}

/// Sum of σ(t, s) over the (quasi-)shuffles selecting `piece`. Trees with a
/// merge use QSh(k,l); binary trees use Sh(k,l) and have an empty middle piece.
template <class Traits>
LinComb<PlanarTree<Traits>> tree_product(const PlanarTree<Traits>& t, const PlanarTree<Traits>& s, Piece piece) {
  if (t.is_leaf() || s.is_leaf()) throw LeafInput("tree products need two internal roots");
  if (!Traits::has_merge && piece == Piece::Middle) return {};
  const int k = static_cast<int>(comb_decompose(t, CombSide::Right).parts.size());
  const int l = static_cast<int>(comb_decompose(s, CombSide::Left).parts.size());
  const auto maps = Traits::has_merge ? enumerate_quasi_shuffles(k, l) : enumerate_shuffles(k, l);
  LinComb<PlanarTree<Traits>> out;
  for (const auto& sigma : maps) {
    if (selects_piece(sigma, piece)) out.add_term(sigma_action(sigma, t, s), Rational(1));
  }
  return out;
}

inline LinComb<AngleTree> tridend_product(const AngleTree& t, const AngleTree& s, Piece piece) {
  return tree_product(t, s, piece);
}
inline LinComb<VertexTree> tridend_product(const VertexTree& t, const VertexTree& s, Piece piece) {
  return tree_product(t, s, piece);
}
inline LinComb<BinaryTree> dend_product(const BinaryTree& t, const BinaryTree& s, Piece piece) {
  return tree_product(t, s, piece);
}

namespace detail {

template <class Traits>
LinComb<PlanarTree<Traits>> inductive_piece(const PlanarTree<Traits>& t, const PlanarTree<Traits>& s, Piece piece);

/// Full product extended to the leaf, which acts as the unit.
template <class Traits>
LinComb<PlanarTree<Traits>> inductive_full(const PlanarTree<Traits>& t, const PlanarTree<Traits>& s) {
  if (t.is_leaf()) return LinComb<PlanarTree<Traits>>(s);
  if (s.is_leaf()) return LinComb<PlanarTree<Traits>>(t);
  auto out = inductive_piece(t, s, Piece::Left);
  out += inductive_piece(t, s, Piece::Right);
  if constexpr (Traits::has_merge) out += inductive_piece(t, s, Piece::Middle);
  return out;
}

template <class Traits>
LinComb<PlanarTree<Traits>> inductive_piece(const PlanarTree<Traits>& t, const PlanarTree<Traits>& s, Piece piece) {
  using Tree = PlanarTree<Traits>;
  const auto& tc = t.children();
  const auto& sc = s.children();
  LinComb<Tree> out;
  switch (piece) {
    case Piece::Left:
      for (const auto& [u, c] : inductive_full(tc.back(), s)) {
        std::vector<Tree> children(tc.begin(), tc.end() - 1);
        children.push_back(u);
        out.add_term(Tree::node(std::move(children), t.decoration()), c);
      }
      break;
    case Piece::Right:
      for (const auto& [u, c] : inductive_full(t, sc.front())) {
        std::vector<Tree> children{u};
        children.insert(children.end(), sc.begin() + 1, sc.end());
        out.add_term(Tree::node(std::move(children), s.decoration()), c);
      }
      break;
    case Piece::Middle:
      if constexpr (Traits::has_merge) {
        const auto deco = Traits::merge(t.decoration(), s.decoration());
        for (const auto& [u, c] : inductive_full(tc.back(), sc.front())) {
          std::vector<Tree> children(tc.begin(), tc.end() - 1);
          children.push_back(u);
          children.insert(children.end(), sc.begin() + 1, sc.end());
          out.add_term(Tree::node(std::move(children), deco), c);
        }
      }
      break;
    case Piece::Full:
      return inductive_full(t, s);
  }
  return out;
}

}  // namespace detail

/// Same contract as tree_product, computed by grafting recursion on the root
/// children instead of the surjection formula.
template <class Traits>
LinComb<PlanarTree<Traits>> tree_product_inductive(const PlanarTree<Traits>& t, const PlanarTree<Traits>& s,
                                                   Piece piece) {
  if (t.is_leaf() || s.is_leaf()) throw LeafInput("tree products need two internal roots");
  return detail::inductive_piece(t, s, piece);
}

template <class Traits>
LinComb<PlanarTree<Traits>> tridend_product_inductive(const PlanarTree<Traits>& t, const PlanarTree<Traits>& s,
                                                      Piece piece) {
  return tree_product_inductive(t, s, piece);
}

/// The products on trees as an algebra over the tree basis.
template <class Traits>
struct TreeAlgebra {
  using Basis = PlanarTree<Traits>;
  static constexpr bool has_middle = Traits::has_merge;
  static LinComb<Basis> left(const Basis& u, const Basis& v) { return tree_product(u, v, Piece::Left); }
  static LinComb<Basis> right(const Basis& u, const Basis& v) { return tree_product(u, v, Piece::Right); }
  static LinComb<Basis> middle(const Basis& u, const Basis& v) { return tree_product(u, v, Piece::Middle); }
  static LinComb<Basis> full(const Basis& u, const Basis& v) { return tree_product(u, v, Piece::Full); }
};

/// Tree combinations: bilinear extension of a piece.
template <class Traits>
LinComb<PlanarTree<Traits>> tree_product(const LinComb<PlanarTree<Traits>>& a, const LinComb<PlanarTree<Traits>>& b,
                                         Piece piece) {
  return product<TreeAlgebra<Traits>>(piece, a, b);
}

// ---------------------------------------------------------------------------
// Structural maps

/// Same shape, each vertex decorated by the sum of its angles.
VertexTree iota(const AngleTree& t);
LinComb<VertexTree> iota(const LinComb<AngleTree>& a);

/// flat(|) = ∅, flat(N{n}(t1..tk)) = n·(flat(t1) ⊛ ... ⊛ flat(tk)).
LinComb<SeriesWord> flatten_series(const VertexTree& t);
LinComb<SeriesWord> flatten_series(const LinComb<VertexTree>& a);

/// flat(|) = ∅, flat(B{z}(l,r)) = z·(flat(l) ⧢ flat(r)).
LinComb<IntegralWord> flatten_int(const BinaryTree& t);
LinComb<IntegralWord> flatten_int(const LinComb<BinaryTree>& a);

/// Image of an angle tree under the tridendriform morphism to words fixed by
/// n ↦ "n", computed from c1 ≻ (a1 ≺ c2)·(a2 ≺ c3)·… with the leaf as unit.
/// Independent of iota and flatten_series.
Augmented<SeriesWord> psi_words(const AngleTree& t);

/// Dendriform analogue on binary trees: Ψ(B{z}(l,r)) = Ψ(l) ≻ (z ≺ Ψ(r)).
Augmented<IntegralWord> psi_words(const BinaryTree& t);

bool is_convergent_vertex_tree(const VertexTree& t);
bool is_convergent_angle_tree(const AngleTree& t);
/// Root decorated x and every vertex with two leaf children decorated y.
bool is_convergent_binary_tree(const BinaryTree& t);

// ---------------------------------------------------------------------------
// Exhaustive enumeration (test corpora and the verify suites)

/// All trees with 2..max_leaves leaves whose vertex of arity a takes every
/// decoration in `decos(a)`, in canonical order.
template <class Traits>
std::vector<PlanarTree<Traits>> enumerate_trees(
    std::size_t max_leaves, const std::function<std::vector<typename Traits::Deco>(std::size_t)>& decos,
    std::size_t max_arity = 0) {
  using Tree = PlanarTree<Traits>;
  std::vector<std::vector<Tree>> by_leaves(max_leaves + 1);
  if (max_leaves >= 1) by_leaves[1].push_back(Tree::leaf());
  for (std::size_t n = 2; n <= max_leaves; ++n) {
    const std::size_t top = max_arity ? std::min(max_arity, n) : n;
    for (std::size_t arity = 2; arity <= top; ++arity) {
      const auto options = decos(arity);
      if (options.empty()) continue;
      // Compositions of n into `arity` positive parts.
      std::vector<std::vector<std::size_t>> compositions;
      std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&)> compose =
          [&](std::size_t slot, std::size_t remaining, std::vector<std::size_t>& acc) {
            if (slot + 1 == arity) {
              acc.push_back(remaining);
              compositions.push_back(acc);
              acc.pop_back();
              return;
            }
            for (std::size_t take = 1; take + (arity - slot - 1) <= remaining; ++take) {
              acc.push_back(take);
              compose(slot + 1, remaining - take, acc);
              acc.pop_back();
            }
          };
      std::vector<std::size_t> acc;
      compose(0, n, acc);
      for (const auto& comp : compositions) {
        std::vector<Tree> children;
        std::function<void(std::size_t)> choose = [&](std::size_t slot) {
          if (slot == arity) {
            for (const auto& d : options) by_leaves[n].push_back(Tree::node(children, d));
            return;
          }
          for (const auto& child : by_leaves[comp[slot]]) {
            children.push_back(child);
            choose(slot + 1);
            children.pop_back();
          }
        };
        choose(0);
      }
    }
    std::sort(by_leaves[n].begin(), by_leaves[n].end());
  }
  std::vector<Tree> out;
  for (std::size_t n = 2; n <= max_leaves; ++n) out.insert(out.end(), by_leaves[n].begin(), by_leaves[n].end());
  return out;
}

/// Angle words over `letters`.
std::vector<AngleTree> enumerate_angle_trees(std::size_t max_leaves, const std::vector<Letter>& letters);
/// Decorations from `decorations` subject to d >= children - 1.
std::vector<VertexTree> enumerate_vertex_trees(std::size_t max_leaves, const std::vector<Letter>& decorations);
std::vector<BinaryTree> enumerate_binary_trees(std::size_t max_leaves);

}  // namespace dzeta
