#include <doctest.h>

#include <random>

#include "dzeta/trees.hpp"
#include "dzeta/words.hpp"

using namespace dzeta;

namespace {

LinComb<IntegralWord> bin(const char* text) { return parse_lincomb<IntegralWord>(text); }
LinComb<SeriesWord> ser(const char* text) { return parse_lincomb<SeriesWord>(text); }

SeriesWord random_word(std::mt19937& rng, std::size_t max_len) {
  std::vector<Letter> letters(rng() % (max_len + 1));
  for (auto& a : letters) a = 1 + rng() % 3;
  return SeriesWord(letters);
}

LinComb<SeriesWord> random_comb(std::mt19937& rng) {
  LinComb<SeriesWord> out;
  const int terms = static_cast<int>(rng() % 4);
  for (int i = 0; i < terms; ++i) {
    out.add_term(random_word(rng, 3), Rational(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4)));
  }
  return out;
}

}  // namespace

TEST_CASE("lincomb_add") {
  const auto w = parse_integral_word("xy");
  CHECK(lincomb_add(LinComb<IntegralWord>(w, 2), LinComb<IntegralWord>(w, -2)).empty());
  CHECK(lincomb_add(bin("4*xxyy + 2*xyxy"), LinComb<IntegralWord>()) == bin("4*xxyy + 2*xyxy"));
  CHECK(lincomb_add(ser("2*(2 1 1)"), ser("1*(2 1 1) + 1*(2 2)")) == ser("3*(2 1 1) + 1*(2 2)"));
}

TEST_CASE("lincomb_scale") {
  CHECK(lincomb_scale(Rational(0), bin("4*xxyy")).empty());
  CHECK(lincomb_scale(Rational(1), bin("4*xxyy - 1/3*xy")) == bin("4*xxyy - 1/3*xy"));
  CHECK(lincomb_scale(Rational(1, 2), bin("4*xxyy + 2*xyxy")) == bin("2*xxyy + 1*xyxy"));
}

TEST_CASE("bilinear_extend") {
  auto sh = [](const IntegralWord& u, const IntegralWord& v) { return shuffle(u, v); };
  auto qsh = [](const SeriesWord& u, const SeriesWord& v) { return qshuffle(u, v); };
  CHECK(bilinear_extend(sh, bin("1*xy"), LinComb<IntegralWord>()).empty());
  CHECK(bilinear_extend(sh, bin("2*x"), bin("1*y")) == bin("2*xy + 2*yx"));
  CHECK(bilinear_extend(qsh, ser("1*(1)"), ser("1*(1)")) == ser("2*(1 1) + 1*(2)"));
}

TEST_CASE("serialization") {
  CHECK(to_string(LinComb<IntegralWord>()) == "0");
  CHECK(to_string(bin("2*xyxy + 4*xxyy")) == "4*xxyy + 2*xyxy");
  CHECK(to_string(ser("-1/2*(3) + 1*()")) == "1*() - 1/2*(3)");
  CHECK(to_string(parse_lincomb<VertexTree>("1*N{2}(N{1},|) - 2*N{3}")) == "-2*N{3}(|,|) + 1*N{2}(N{1}(|,|),|)");
  CHECK_THROWS_AS(parse_lincomb<IntegralWord>("2*xz"), ParseError);
  CHECK_THROWS_AS(parse_lincomb<IntegralWord>("2xy"), ParseError);
  CHECK_THROWS_AS(parse_lincomb<SeriesWord>("1*(2 1"), ParseError);
}

TEST_CASE("property: serialization round trip") {
  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto a = random_comb(rng);
    CHECK(parse_lincomb<SeriesWord>(to_string(a)) == a);
  }
}

TEST_CASE("property: bilinear_extend is bilinear") {
  std::mt19937 rng(12);
  auto qsh = [](const SeriesWord& u, const SeriesWord& v) { return qshuffle(u, v); };
  for (int i = 0; i < 150; ++i) {
    const auto a = random_comb(rng), a2 = random_comb(rng), b = random_comb(rng);
    const Rational lambda(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    const auto lhs = bilinear_extend(qsh, lambda * a + a2, b);
    const auto rhs = lambda * bilinear_extend(qsh, a, b) + bilinear_extend(qsh, a2, b);
    CHECK(lhs == rhs);
    const auto lhs2 = bilinear_extend(qsh, b, lambda * a + a2);
    CHECK(lhs2 == lambda * bilinear_extend(qsh, b, a) + bilinear_extend(qsh, b, a2));
  }
}

namespace {

template <class A>
void check_unit_laws(const std::vector<typename A::Basis>& basis) {
  using B = typename A::Basis;
  const Augmented<B> one{Rational(1), {}};
  for (const auto& x : basis) {
    const Augmented<B> a{Rational(0), LinComb<B>(x)};
    const Augmented<B> zero{};
    CHECK(augmented_product<A>(Piece::Right, one, a) == a);
    CHECK(augmented_product<A>(Piece::Left, a, one) == a);
    CHECK(augmented_product<A>(Piece::Left, one, a) == zero);
    CHECK(augmented_product<A>(Piece::Right, a, one) == zero);
    CHECK(augmented_product<A>(Piece::Middle, one, a) == zero);
    CHECK(augmented_product<A>(Piece::Middle, a, one) == zero);
    CHECK(augmented_product<A>(Piece::Full, one, a) == a);
    CHECK(augmented_product<A>(Piece::Full, a, one) == a);
  }
  CHECK(augmented_product<A>(Piece::Full, one, one) == one);
  CHECK_THROWS_AS(augmented_product<A>(Piece::Left, one, one), EmptyOperand);
  CHECK_THROWS_AS(augmented_product<A>(Piece::Right, one, one), EmptyOperand);
  CHECK_THROWS_AS(augmented_product<A>(Piece::Middle, one, one), EmptyOperand);
}

}  // namespace

TEST_CASE("augmented unit laws, exhaustive up to size 4") {
  std::vector<SeriesWord> words;
  std::vector<IntegralWord> bin_words;
  for (std::size_t len = 1; len <= 4; ++len) {
    for (unsigned mask = 0; mask < (1U << len); ++mask) {
      std::vector<Letter> s;
      std::vector<Bin> b;
      for (std::size_t i = 0; i < len; ++i) {
        s.push_back(1 + ((mask >> i) & 1U));
        b.push_back(((mask >> i) & 1U) ? Bin::y : Bin::x);
      }
      words.emplace_back(s);
      bin_words.emplace_back(b);
    }
  }
  check_unit_laws<QuasiShuffleAlgebra>(words);
  check_unit_laws<ShuffleAlgebra<Bin>>(bin_words);
  check_unit_laws<TreeAlgebra<AngleTraits>>(enumerate_angle_trees(4, {1, 2}));
  check_unit_laws<TreeAlgebra<VertexTraits>>(enumerate_vertex_trees(4, {1, 2, 3}));
  check_unit_laws<TreeAlgebra<BinaryTraits>>(enumerate_binary_trees(4));
}

TEST_CASE("piece names") {
  CHECK(parse_piece("<") == Piece::Left);
  CHECK(parse_piece("mid") == Piece::Middle);
  CHECK(to_string(Piece::Full) == "full");
  CHECK_THROWS_AS(parse_piece("sideways"), ParseError);
}
