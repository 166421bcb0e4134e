#include <doctest.h>

#include <algorithm>
#include <random>

#include "dzeta/trees.hpp"

using namespace dzeta;

namespace {

AngleTree at(const char* text) { return parse_angle_tree(text); }
VertexTree vt(const char* text) { return parse_vertex_tree(text); }
BinaryTree bt(const char* text) { return parse_binary_tree(text); }
LinComb<SeriesWord> sc(const char* text) { return parse_lincomb<SeriesWord>(text); }

template <class Traits>
LinComb<PlanarTree<Traits>> tc(const char* text) {
  return parse_lincomb<PlanarTree<Traits>>(text);
}

// Grafting recursion on root children; the leaf is the unit of the full
// product. Written here from scratch so the surjection formula has an
// independent reference.
template <class Traits>
struct Grafting {
  using Tree = PlanarTree<Traits>;
  using Comb = LinComb<Tree>;

  static Comb full(const Tree& t, const Tree& s) {
    if (t.is_leaf()) return Comb(s);
    if (s.is_leaf()) return Comb(t);
    Comb out = piece(t, s, Piece::Left) + piece(t, s, Piece::Right);
    if constexpr (Traits::has_merge) out += piece(t, s, Piece::Middle);
    return out;
  }

  static Comb piece(const Tree& t, const Tree& s, Piece p) {
    const auto& tc = t.children();
    const auto& sc = s.children();
    Comb out;
    if (p == Piece::Left) {
      for (const auto& [g, c] : full(tc.back(), s)) {
        std::vector<Tree> ch(tc.begin(), tc.end() - 1);
        ch.push_back(g);
        out.add_term(Tree::node(ch, t.decoration()), c);
      }
    } else if (p == Piece::Right) {
      for (const auto& [g, c] : full(t, sc.front())) {
        std::vector<Tree> ch{g};
        ch.insert(ch.end(), sc.begin() + 1, sc.end());
        out.add_term(Tree::node(ch, s.decoration()), c);
      }
    } else if (p == Piece::Middle) {
      if constexpr (Traits::has_merge) {
        for (const auto& [g, c] : full(tc.back(), sc.front())) {
          std::vector<Tree> ch(tc.begin(), tc.end() - 1);
          ch.push_back(g);
          ch.insert(ch.end(), sc.begin() + 1, sc.end());
          out.add_term(Tree::node(ch, Traits::merge(t.decoration(), s.decoration())), c);
        }
      }
    } else {
      out = full(t, s);
    }
    return out;
  }
};

template <class Traits>
void check_against_grafting(const std::vector<PlanarTree<Traits>>& trees) {
  for (const auto& t : trees) {
    for (const auto& s : trees) {
      for (Piece p : {Piece::Left, Piece::Right, Piece::Middle, Piece::Full}) {
        const auto expected = Grafting<Traits>::piece(t, s, p);
        CHECK(tree_product(t, s, p) == expected);
        CHECK(tree_product_inductive(t, s, p) == expected);
      }
    }
  }
}

// Planar Schröder trees with n leaves, counted by the recursion over the
// root's children.
std::vector<std::size_t> schroeder_counts(std::size_t n_max) {
  // forests[n][k]: ordered sequences of k trees with n leaves in total.
  std::vector<std::size_t> trees(n_max + 1, 0);
  trees[1] = 1;
  for (std::size_t n = 2; n <= n_max; ++n) {
    std::vector<std::vector<std::size_t>> seq(n + 1, std::vector<std::size_t>(n + 1, 0));
    seq[0][0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t m = 1; m <= n; ++m) {
        for (std::size_t first = 1; first <= m && first < n; ++first) seq[k][m] += trees[first] * seq[k - 1][m - first];
      }
    }
    for (std::size_t k = 2; k <= n; ++k) trees[n] += seq[k][n];
  }
  return trees;
}

template <class Tree, class Pred>
std::vector<Tree> filter(const std::vector<Tree>& in, Pred pred) {
  std::vector<Tree> out;
  for (const auto& t : in) {
    if (pred(t)) out.push_back(t);
  }
  return out;
}

}  // namespace

TEST_CASE("tree text round trip and shorthands") {
  CHECK(to_string(at("|")) == "|");
  CHECK(to_string(at("V[1,2]")) == "V[1,2](|,|,|)");
  CHECK(to_string(vt("N{2}(N{1},N{1})")) == "N{2}(N{1}(|,|),N{1}(|,|))");
  CHECK(to_string(bt("B{x}(B{y},|)")) == "B{x}(B{y}(|,|),|)");
  for (const char* text : {"V[3](V[1,2](|,|,|),|)", "V[1](|,V[5](|,|))"}) CHECK(to_string(at(text)) == text);
  for (const char* text : {"N{3}(|,|,N{1}(|,|),|)", "N{1}(N{1}(|,|),|)"}) CHECK(to_string(vt(text)) == text);
  CHECK(at("V[2](|,|)").leaves() == 2);
  CHECK(vt("N{2}(N{1},N{1})").leaves() == 4);
  CHECK(vt("N{2}(N{1},N{1})").internal_count() == 3);
}

TEST_CASE("invalid tree text and structure") {
  // Structural violations in text are reported with their position.
  CHECK_THROWS_AS(vt("N{2}(|)"), ParseError);        // arity 1
  CHECK_THROWS_AS(vt("N{1}(|,|,|)"), ParseError);    // decoration below arity - 1
  CHECK_THROWS_AS(at("V[1](|,|,|)"), ParseError);    // angle count mismatch
  CHECK_THROWS_AS(bt("B{x}(|,|,|)"), ParseError);
  CHECK_THROWS_AS(bt("B{z}(|,|)"), ParseError);
  CHECK_THROWS_AS(vt("N{2}(|,|"), ParseError);
  CHECK_THROWS_AS(vt("N{2}(|,|) extra"), ParseError);
  try {
    at("V[0](|,|)");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(VertexTree::node({VertexTree::leaf()}, 2), InvalidStructure);
  CHECK_THROWS_AS(VertexTree::node({VertexTree::leaf(), VertexTree::leaf(), VertexTree::leaf()}, 1), InvalidStructure);
  CHECK_THROWS_AS(AngleTree::node({AngleTree::leaf(), AngleTree::leaf()}, {1, 2}), InvalidStructure);
  CHECK_THROWS_AS(BinaryTree::node({BinaryTree::leaf()}, Bin::x), InvalidStructure);
}

TEST_CASE("comb decomposition") {
  const auto t = vt("N{1}(N{1}(N{1}(|,|),|),|)");
  const auto right = comb_decompose(t, CombSide::Right);
  REQUIRE(right.parts.size() == 1);
  CHECK(right.parts[0].forest.size() == 1);
  CHECK(right.parts[0].forest[0] == vt("N{1}(N{1}(|,|),|)"));
  const auto left = comb_decompose(t, CombSide::Left);
  CHECK(left.parts.size() == 3);
  CHECK(comb_reassemble(right) == t);
  CHECK(comb_reassemble(left) == t);
  CHECK_THROWS_AS(comb_decompose(vt("|"), CombSide::Left), LeafInput);
}

TEST_CASE("property: comb reassembly is the identity") {
  for (const auto& t : enumerate_angle_trees(4, {1, 2})) {
    CHECK(comb_reassemble(comb_decompose(t, CombSide::Left)) == t);
    CHECK(comb_reassemble(comb_decompose(t, CombSide::Right)) == t);
  }
}

TEST_CASE("sigma action") {
  const auto t = at("V[1](V[5],V[2](|,|))");
  const auto s = at("V[3](V[4](|,|),V[6])");
  const SurjectionMap sigma{2, 2, {1, 3, 2, 3}, 3};
  CHECK(sigma_action(sigma, t, s) == at("V[1](V[5](|,|),V[3](V[2,4](|,|,|),V[6](|,|)))"));
  const auto tv = iota(t);
  const auto sv = iota(s);
  CHECK(sigma_action(sigma, tv, sv) == iota(sigma_action(sigma, t, s)));
  CHECK(sigma_action(sigma, tv, sv).children()[1].children()[0].decoration() == 6);
  CHECK_THROWS_AS(sigma_action(SurjectionMap{1, 1, {1, 2}, 2}, t, s), ArityMismatch);
}

TEST_CASE("products on one-vertex trees") {
  const auto a = at("V[1]");
  const auto b = at("V[2]");
  CHECK(tree_product(a, b, Piece::Left) == tc<AngleTraits>("1*V[1](|,V[2](|,|))"));
  CHECK(tree_product(a, b, Piece::Right) == tc<AngleTraits>("1*V[2](V[1](|,|),|)"));
  CHECK(tree_product(a, b, Piece::Middle) == tc<AngleTraits>("1*V[1,2](|,|,|)"));
  CHECK(tree_product(a, b, Piece::Full).size() == 3);
  const auto x = bt("B{x}");
  const auto y = bt("B{y}");
  CHECK(dend_product(x, y, Piece::Full) == tc<BinaryTraits>("1*B{x}(|,B{y}(|,|)) + 1*B{y}(B{x}(|,|),|)"));
  CHECK(dend_product(x, y, Piece::Left) == tc<BinaryTraits>("1*B{x}(|,B{y}(|,|))"));
  CHECK(dend_product(x, y, Piece::Middle).empty());
  CHECK_THROWS_AS(tree_product(bt("|"), y, Piece::Left), LeafInput);
}

TEST_CASE("products of the worked vertex trees") {
  const auto t = vt("N{2}(N{1},N{1})");
  const auto s = vt("N{2}");
  CHECK(tridend_product(t, s, Piece::Left) ==
        tc<VertexTraits>("1*N{2}(N{1}(|,|),N{1}(|,N{2}(|,|))) + 1*N{2}(N{1}(|,|),N{2}(N{1}(|,|),|)) + "
                         "1*N{2}(N{1}(|,|),N{3}(|,|,|))"));
  CHECK(tridend_product(t, s, Piece::Right) == tc<VertexTraits>("1*N{2}(N{2}(N{1}(|,|),N{1}(|,|)),|)"));
  CHECK(tridend_product(t, s, Piece::Middle) == tc<VertexTraits>("1*N{4}(N{1}(|,|),N{1}(|,|),|)"));
  const auto full = tridend_product(t, s, Piece::Full);
  CHECK(full.size() == 5);
  CHECK(flatten_series(full) == qshuffle(flatten_series(t), flatten_series(s)));
  // The fifteen displayed summands of the worked relation, with multiplicity.
  CHECK(flatten_series(full) ==
        sc("1*(2 1 2 1) + 2*(2 1 1 2) + 1*(2 1 3) + 1*(2 2 2) + 2*(2 2 1 1) + 1*(2 1 2 1) + 1*(2 3 1) + "
           "1*(2 2 2) + 1*(2 3 1) + 1*(2 1 3) + 1*(2 4) + 2*(2 2 1 1) + 1*(2 2 2) + 2*(4 1 1) + 1*(4 2)"));
}

TEST_CASE("dendriform products count shuffles") {
  // Right comb of length k times left comb of length l: C(k+l, k) terms.
  const auto t = bt("B{x}(|,B{x}(|,B{y}))");
  const auto s = bt("B{y}(B{y},|)");
  CHECK(dend_product(t, s, Piece::Full).total_weight() == Rational(10));
}

TEST_CASE("property: surjection formula matches grafting recursion") {
  check_against_grafting(enumerate_angle_trees(3, {1, 2}));
  check_against_grafting(enumerate_vertex_trees(3, {1, 2}));
  check_against_grafting(enumerate_binary_trees(4));
}

TEST_CASE("property: random pairs with four leaves match grafting recursion") {
  const auto angles = enumerate_angle_trees(4, {1, 2, 3});
  const auto bins = enumerate_binary_trees(4);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const auto& t = angles[rng() % angles.size()];
    const auto& s = angles[rng() % angles.size()];
    for (Piece p : {Piece::Left, Piece::Right, Piece::Middle}) {
      CHECK(tree_product(t, s, p) == Grafting<AngleTraits>::piece(t, s, p));
    }
    const auto& u = bins[rng() % bins.size()];
    const auto& v = bins[rng() % bins.size()];
    CHECK(tree_product(u, v, Piece::Full) == Grafting<BinaryTraits>::full(u, v));
  }
}

TEST_CASE("iota and flatten") {
  CHECK(iota(at("V[5]")) == vt("N{5}"));
  CHECK(iota(at("V[1,2](|,V[4],|)")) == vt("N{3}(|,N{4},|)"));
  CHECK(flatten_series(vt("N{2}(N{1},N{1})")) == sc("2*(2 1 1) + 1*(2 2)"));
  CHECK(flatten_series(vt("N{3}(|,|)")) == sc("1*(3)"));
  CHECK(flatten_series(vt("|")) == sc("1*()"));
  CHECK(flatten_int(bt("B{x}(B{y},B{y})")) == parse_lincomb<IntegralWord>("2*xyy"));
  CHECK(flatten_int(bt("B{x}(|,B{y})")) == parse_lincomb<IntegralWord>("1*xy"));
}

TEST_CASE("psi on trees") {
  const auto prod = tree_product(at("V[2]"), at("V[3]"), Piece::Middle);
  REQUIRE(prod.size() == 1);
  const auto psi = psi_words(prod.begin()->first);
  CHECK(psi.unit.is_zero());
  CHECK(psi.body == sc("1*(5)"));
  CHECK(flatten_series(iota(prod)) == sc("1*(5)"));
  CHECK(psi_words(at("|")).unit == Rational(1));
  CHECK(psi_words(at("V[1](V[2],|)")).body == sc("1*(1 2)"));
  CHECK(psi_words(bt("B{x}(B{y},B{y})")).body == parse_lincomb<IntegralWord>("2*xyy"));
}

TEST_CASE("property: psi factors through iota and flatten") {
  for (const auto& t : enumerate_angle_trees(4, {1, 2})) {
    const auto psi = psi_words(t);
    CHECK(psi.unit.is_zero());
    CHECK(psi.body == flatten_series(iota(t)));
  }
  for (const auto& t : enumerate_binary_trees(4)) CHECK(psi_words(t).body == flatten_int(t));
}

TEST_CASE("property: structural maps are morphisms") {
  const auto angles = enumerate_angle_trees(3, {1, 2});
  for (const auto& t : angles) {
    for (const auto& s : angles) {
      CHECK(iota(tree_product(t, s, Piece::Left)) == tree_product(iota(t), iota(s), Piece::Left));
      CHECK(iota(tree_product(t, s, Piece::Middle)) == tree_product(iota(t), iota(s), Piece::Middle));
      const auto ft = flatten_series(iota(t));
      const auto fs = flatten_series(iota(s));
      CHECK(flatten_series(iota(tree_product(t, s, Piece::Right))) ==
            product<QuasiShuffleAlgebra>(Piece::Right, ft, fs));
      CHECK(flatten_series(iota(tree_product(t, s, Piece::Middle))) ==
            product<QuasiShuffleAlgebra>(Piece::Middle, ft, fs));
    }
  }
  const auto bins = enumerate_binary_trees(3);
  for (const auto& t : bins) {
    for (const auto& s : bins) {
      CHECK(flatten_int(dend_product(t, s, Piece::Left)) ==
            product<ShuffleAlgebra<Bin>>(Piece::Left, flatten_int(t), flatten_int(s)));
      CHECK(flatten_int(dend_product(t, s, Piece::Full)) == shuffle(flatten_int(t), flatten_int(s)));
    }
  }
}

TEST_CASE("convergence predicates on trees") {
  CHECK(is_convergent_vertex_tree(vt("N{2}(N{1},N{1})")));
  CHECK_FALSE(is_convergent_vertex_tree(vt("N{1}(|,|)")));
  CHECK(is_convergent_vertex_tree(vt("|")));
  CHECK_FALSE(is_convergent_angle_tree(at("V[1]")));
  CHECK(is_convergent_angle_tree(at("V[2]")));
  CHECK(is_convergent_binary_tree(bt("B{x}(B{y},B{y})")));
  CHECK_FALSE(is_convergent_binary_tree(bt("B{y}(B{y},B{y})")));
  CHECK_FALSE(is_convergent_binary_tree(bt("B{x}(B{x},B{y})")));
  CHECK_FALSE(is_convergent_binary_tree(bt("B{x}")));
}

TEST_CASE("property: tree convergence matches its flattened words") {
  for (const auto& t : enumerate_binary_trees(5)) {
    bool words_ok = true;
    for (const auto& [w, c] : flatten_int(t)) words_ok = words_ok && is_convergent_integral_word(w);
    CHECK(is_convergent_binary_tree(t) == words_ok);
  }
  for (const auto& t : enumerate_vertex_trees(4, {1, 2, 3})) {
    bool words_ok = true;
    for (const auto& [w, c] : flatten_series(t)) words_ok = words_ok && is_convergent_series_word(w);
    CHECK(is_convergent_vertex_tree(t) == words_ok);
  }
}

TEST_CASE("property: products of convergent trees stay convergent") {
  const auto vs = filter(enumerate_vertex_trees(4, {1, 2, 3}), is_convergent_vertex_tree);
  const auto bs = filter(enumerate_binary_trees(4), is_convergent_binary_tree);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    for (const auto& [u, c] : tree_product(vs[rng() % vs.size()], vs[rng() % vs.size()], Piece::Full)) {
      CHECK(is_convergent_vertex_tree(u));
    }
    for (const auto& [u, c] : tree_product(bs[rng() % bs.size()], bs[rng() % bs.size()], Piece::Full)) {
      CHECK(is_convergent_binary_tree(u));
    }
  }
}

TEST_CASE("enumeration counts") {
  const auto sch = schroeder_counts(5);
  CHECK(sch[2] == 1);
  CHECK(sch[3] == 3);
  CHECK(sch[4] == 11);
  CHECK(sch[5] == 45);
  CHECK(enumerate_vertex_trees(5, {4}).size() == sch[2] + sch[3] + sch[4] + sch[5]);
  // Binary trees with n leaves: Catalan(n - 1) shapes, two colours per vertex.
  CHECK(enumerate_binary_trees(4).size() == 1 * 2 + 2 * 4 + 5 * 8);
  const auto angles = enumerate_angle_trees(3, {1, 2});
  CHECK(angles.size() == 2 + 4 + 2 * 2 * 2);
  CHECK(std::is_sorted(angles.begin(), angles.end()));
}
