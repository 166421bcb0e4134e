#include "dzeta/trees.hpp"

#include <charconv>

namespace dzeta {

namespace {

Letter parse_letter(std::string_view text, std::size_t& pos) {
  Letter value = 0;
  auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) throw ParseError("decoration exceeds 64 bits", pos);
  if (ec != std::errc() || ptr == text.data() + pos) throw ParseError("expected a positive integer", pos);
  if (value == 0) throw ParseError("decorations must be >= 1", pos);
  pos = static_cast<std::size_t>(ptr - text.data());
  return value;
}

void expect(std::string_view text, std::size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw ParseError(std::string("expected '") + c + "'", pos);
  }
  ++pos;
}

}  // namespace

void AngleTraits::validate(const Deco& deco, std::size_t arity) {
  if (deco.size() + 1 != arity) {
    throw InvalidStructure("a vertex with " + std::to_string(arity) + " children needs " + std::to_string(arity - 1) +
                           " angle decorations, got " + std::to_string(deco.size()));
  }
  for (Letter a : deco) {
    if (a == 0) throw InvalidStructure("angle decorations must be >= 1");
  }
}

AngleTraits::Deco AngleTraits::merge(const Deco& a, const Deco& b) {
  Deco out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::string AngleTraits::deco_text(const Deco& deco) {
  std::string out = "V[";
  for (std::size_t i = 0; i < deco.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(deco[i]);
  }
  return out + "]";
}

AngleTraits::Deco AngleTraits::parse_deco(std::string_view text, std::size_t& pos) {
  expect(text, pos, 'V');
  expect(text, pos, '[');
  Deco out;
  while (true) {
    out.push_back(parse_letter(text, pos));
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    expect(text, pos, ']');
    return out;
  }
}

void VertexTraits::validate(const Deco& deco, std::size_t arity) {
  if (deco == 0) throw InvalidStructure("vertex decorations must be >= 1");
  if (deco + 1 < arity) {
    throw InvalidStructure("vertex decorated " + std::to_string(deco) + " cannot have " + std::to_string(arity) +
                           " children (needs decoration >= children - 1)");
  }
}

std::string VertexTraits::deco_text(const Deco& deco) { return "N{" + std::to_string(deco) + "}"; }

VertexTraits::Deco VertexTraits::parse_deco(std::string_view text, std::size_t& pos) {
  expect(text, pos, 'N');
  expect(text, pos, '{');
  const Letter d = parse_letter(text, pos);
  expect(text, pos, '}');
  return d;
}

void BinaryTraits::validate(const Deco&, std::size_t arity) {
  if (arity != 2) throw InvalidStructure("binary tree vertices have exactly two children");
}

std::string BinaryTraits::deco_text(const Deco& deco) { return std::string("B{") + to_char(deco) + "}"; }

BinaryTraits::Deco BinaryTraits::parse_deco(std::string_view text, std::size_t& pos) {
  expect(text, pos, 'B');
  expect(text, pos, '{');
  if (pos >= text.size() || (text[pos] != 'x' && text[pos] != 'y')) throw ParseError("expected 'x' or 'y'", pos);
  const Bin d = text[pos] == 'x' ? Bin::x : Bin::y;
  ++pos;
  expect(text, pos, '}');
  return d;
}

// ---------------------------------------------------------------------------

VertexTree iota(const AngleTree& t) {
  if (t.is_leaf()) return {};
  std::vector<VertexTree> children;
  children.reserve(t.children().size());
  for (const auto& c : t.children()) children.push_back(iota(c));
  Letter sum = 0;
  for (Letter a : t.decoration()) sum = checked_add(sum, a);
  return VertexTree::node(std::move(children), sum);
}

LinComb<VertexTree> iota(const LinComb<AngleTree>& a) {
  LinComb<VertexTree> out;
  for (const auto& [t, c] : a) out.add_term(iota(t), c);
  return out;
}

LinComb<SeriesWord> flatten_series(const VertexTree& t) {
  if (t.is_leaf()) return LinComb<SeriesWord>(SeriesWord{});
  LinComb<SeriesWord> acc(SeriesWord{});
  for (const auto& c : t.children()) acc = qshuffle(acc, flatten_series(c));
  return detail::ShuffleTable<Letter>::prepend(t.decoration(), acc);
}

LinComb<SeriesWord> flatten_series(const LinComb<VertexTree>& a) {
  return a.map_linear([](const VertexTree& t) { return flatten_series(t); });
}

LinComb<IntegralWord> flatten_int(const BinaryTree& t) {
  if (t.is_leaf()) return LinComb<IntegralWord>(IntegralWord{});
  const auto& ch = t.children();
  return detail::ShuffleTable<Bin>::prepend(t.decoration(), shuffle(flatten_int(ch[0]), flatten_int(ch[1])));
}

LinComb<IntegralWord> flatten_int(const LinComb<BinaryTree>& a) {
  return a.map_linear([](const BinaryTree& t) { return flatten_int(t); });
}

Augmented<SeriesWord> psi_words(const AngleTree& t) {
  using A = QuasiShuffleAlgebra;
  if (t.is_leaf()) return {Rational(1), {}};
  const auto& ch = t.children();
  const auto& angles = t.decoration();
  Augmented<SeriesWord> chain;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const Augmented<SeriesWord> letter{Rational(0), LinComb<SeriesWord>(SeriesWord{angles[i]})};
    auto factor = augmented_product<A>(Piece::Left, letter, psi_words(ch[i + 1]));
    chain = i == 0 ? factor : augmented_product<A>(Piece::Middle, chain, factor);
  }
  return augmented_product<A>(Piece::Right, psi_words(ch[0]), chain);
}

Augmented<IntegralWord> psi_words(const BinaryTree& t) {
  using A = ShuffleAlgebra<Bin>;
  if (t.is_leaf()) return {Rational(1), {}};
  const auto& ch = t.children();
  const Augmented<IntegralWord> letter{Rational(0), LinComb<IntegralWord>(IntegralWord{t.decoration()})};
  return augmented_product<A>(Piece::Right, psi_words(ch[0]), augmented_product<A>(Piece::Left, letter, psi_words(ch[1])));
}

bool is_convergent_vertex_tree(const VertexTree& t) { return t.is_leaf() || t.decoration() != 1; }

bool is_convergent_angle_tree(const AngleTree& t) {
  return t.is_leaf() || !(t.decoration().size() == 1 && t.decoration()[0] == 1);
}

namespace {

bool terminal_vertices_are_y(const BinaryTree& t) {
  if (t.is_leaf()) return true;
  const auto& ch = t.children();
  if (ch[0].is_leaf() && ch[1].is_leaf()) return t.decoration() == Bin::y;
  return terminal_vertices_are_y(ch[0]) && terminal_vertices_are_y(ch[1]);
}

}  // namespace

bool is_convergent_binary_tree(const BinaryTree& t) {
  return t.is_leaf() || (t.decoration() == Bin::x && terminal_vertices_are_y(t));
}

// ---------------------------------------------------------------------------

std::vector<AngleTree> enumerate_angle_trees(std::size_t max_leaves, const std::vector<Letter>& letters) {
  return enumerate_trees<AngleTraits>(max_leaves, [&](std::size_t arity) {
    std::vector<AngleTraits::Deco> out{{}};
    for (std::size_t slot = 0; slot + 1 < arity; ++slot) {
      std::vector<AngleTraits::Deco> next;
      for (const auto& prefix : out) {
        for (Letter a : letters) {
          auto w = prefix;
          w.push_back(a);
          next.push_back(std::move(w));
        }
      }
      out = std::move(next);
    }
    return out;
  });
}

std::vector<VertexTree> enumerate_vertex_trees(std::size_t max_leaves, const std::vector<Letter>& decorations) {
  return enumerate_trees<VertexTraits>(max_leaves, [&](std::size_t arity) {
    std::vector<Letter> out;
    for (Letter d : decorations) {
      if (d >= 1 && d + 1 >= arity) out.push_back(d);
    }
    return out;
  });
}

std::vector<BinaryTree> enumerate_binary_trees(std::size_t max_leaves) {
  return enumerate_trees<BinaryTraits>(
      max_leaves, [](std::size_t) { return std::vector<Bin>{Bin::x, Bin::y}; }, 2);
}

}  // namespace dzeta
