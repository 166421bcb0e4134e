#include "dzeta/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

namespace dzeta {

Letter checked_add(Letter a, Letter b) {
  if (a > std::numeric_limits<Letter>::max() - b) throw LetterOverflow("letter sum exceeds 64 bits");
  return a + b;
}

char to_char(Bin b) { return b == Bin::x ? 'x' : 'y'; }

std::string to_string(const SeriesWord& w) {
  if (w.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w[i]);
  }
  return out;
}

std::string to_string(const IntegralWord& w) {
  if (w.empty()) return "()";
  std::string out;
  for (Bin b : w.letters()) out += to_char(b);
  return out;
}

namespace {

std::string_view strip(std::string_view text, std::size_t& offset) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
    ++offset;
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

std::string_view unwrap_parens(std::string_view text, std::size_t& offset) {
  text = strip(text, offset);
  if (text.size() >= 2 && text.front() == '(' && text.back() == ')') {
    ++offset;
    text = text.substr(1, text.size() - 2);
    text = strip(text, offset);
  }
  return text;
}

SeriesWord parse_series_at(std::string_view text, std::size_t offset) {
  text = unwrap_parens(text, offset);
  std::vector<Letter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    Letter value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range) throw ParseError("letter exceeds 64 bits", offset + i);
    if (ec != std::errc() || ptr == text.data() + i) {
      throw ParseError("expected a positive integer letter", offset + i);
    }
    if (value == 0) throw ParseError("letters of N* words must be >= 1", offset + i);
    const std::size_t next = static_cast<std::size_t>(ptr - text.data());
    if (next < text.size() && text[next] != ' ') throw ParseError("unexpected character in word", offset + next);
    letters.push_back(value);
    i = next;
  }
  return SeriesWord(std::move(letters));
}

IntegralWord parse_integral_at(std::string_view text, std::size_t offset) {
  text = unwrap_parens(text, offset);
  std::vector<Bin> letters;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 'x') {
      letters.push_back(Bin::x);
    } else if (text[i] == 'y') {
      letters.push_back(Bin::y);
    } else {
      throw ParseError(std::string("expected 'x' or 'y', found '") + text[i] + "'", offset + i);
    }
  }
  return IntegralWord(std::move(letters));
}

}  // namespace

SeriesWord parse_series_word(std::string_view text) { return parse_series_at(text, 0); }
IntegralWord parse_integral_word(std::string_view text) { return parse_integral_at(text, 0); }

std::string BasisText<SeriesWord>::term(const SeriesWord& w) {
  return w.empty() ? "()" : "(" + to_string(w) + ")";
}

SeriesWord BasisText<SeriesWord>::parse_term(std::string_view text, std::size_t offset) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ParseError("series words inside a combination are written in parentheses", offset);
  }
  return parse_series_at(text, offset);
}

std::string BasisText<IntegralWord>::term(const IntegralWord& w) { return to_string(w); }

IntegralWord BasisText<IntegralWord>::parse_term(std::string_view text, std::size_t offset) {
  return parse_integral_at(text, offset);
}

// ---------------------------------------------------------------------------

std::vector<int> SurjectionMap::fiber(int m) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == m) out.push_back(static_cast<int>(i) + 1);
  }
  return out;
}

namespace {

void extend_maps(int k, int l, bool allow_merge, int i, int j, int step, std::vector<int>& values,
                 std::vector<SurjectionMap>& out) {
  if (i == k && j == l) {
    out.push_back({k, l, values, step});
    return;
  }
  if (i < k) {
    values[static_cast<std::size_t>(i)] = step + 1;
    extend_maps(k, l, allow_merge, i + 1, j, step + 1, values, out);
  }
  if (j < l) {
    values[static_cast<std::size_t>(k + j)] = step + 1;
    extend_maps(k, l, allow_merge, i, j + 1, step + 1, values, out);
  }
  if (allow_merge && i < k && j < l) {
    values[static_cast<std::size_t>(i)] = step + 1;
    values[static_cast<std::size_t>(k + j)] = step + 1;
    extend_maps(k, l, allow_merge, i + 1, j + 1, step + 1, values, out);
  }
}

std::vector<SurjectionMap> enumerate(int k, int l, bool allow_merge) {
  if (k < 1 || l < 1) throw InvalidStructure("(k,l)-shuffles need k >= 1 and l >= 1");
  std::vector<SurjectionMap> out;
  std::vector<int> values(static_cast<std::size_t>(k + l), 0);
  extend_maps(k, l, allow_merge, 0, 0, 0, values, out);
  std::sort(out.begin(), out.end(), [](const SurjectionMap& a, const SurjectionMap& b) { return a.values < b.values; });
  return out;
}

}  // namespace

std::vector<ShuffleMap> enumerate_shuffles(int k, int l) { return enumerate(k, l, false); }

std::vector<QuasiShuffleMap> enumerate_quasi_shuffles(int k, int l) {
  auto maps = enumerate(k, l, true);
  for (const auto& sigma : maps) {
    if (!is_valid_quasi_shuffle(sigma)) throw InvalidStructure("quasi-shuffle enumeration broke the fiber invariant");
  }
  return maps;
}

bool is_valid_quasi_shuffle(const SurjectionMap& sigma) {
  const auto n = static_cast<std::size_t>(sigma.k + sigma.l);
  if (sigma.k < 1 || sigma.l < 1 || sigma.values.size() != n) return false;
  for (int i = 1; i < sigma.k; ++i) {
    if (sigma.values[static_cast<std::size_t>(i - 1)] >= sigma.values[static_cast<std::size_t>(i)]) return false;
  }
  for (int i = sigma.k + 1; i < sigma.k + sigma.l; ++i) {
    if (sigma.values[static_cast<std::size_t>(i - 1)] >= sigma.values[static_cast<std::size_t>(i)]) return false;
  }
  for (int m = 1; m <= sigma.max; ++m) {
    const auto f = sigma.fiber(m);
    if (f.empty() || f.size() > 2) return false;
    if (f.size() == 2 && !(f[0] <= sigma.k && f[1] > sigma.k)) return false;
  }
  return std::all_of(sigma.values.begin(), sigma.values.end(), [&](int v) { return v >= 1 && v <= sigma.max; });
}

bool selects_piece(const SurjectionMap& sigma, Piece piece) {
  const auto f = sigma.fiber(1);
  switch (piece) {
    case Piece::Left:
      return f == std::vector<int>{1};
    case Piece::Right:
      return f == std::vector<int>{sigma.k + 1};
    case Piece::Middle:
      return f == std::vector<int>{1, sigma.k + 1};
    case Piece::Full:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

LinComb<SeriesWord> qshuffle(const SeriesWord& u, const SeriesWord& v) {
  detail::ShuffleTable<Letter> table(u, v, true);
  return table.at(0, 0);
}

LinComb<SeriesWord> qshuffle_left(const SeriesWord& u, const SeriesWord& v) {
  if (u.empty()) throw EmptyOperand("u ≺ v is undefined for u = ∅");
  detail::ShuffleTable<Letter> table(u, v, true);
  return detail::ShuffleTable<Letter>::prepend(u[0], table.at(1, 0));
}

LinComb<SeriesWord> qshuffle_right(const SeriesWord& u, const SeriesWord& v) {
  if (v.empty()) throw EmptyOperand("u ≻ v is undefined for v = ∅");
  detail::ShuffleTable<Letter> table(u, v, true);
  return detail::ShuffleTable<Letter>::prepend(v[0], table.at(0, 1));
}

LinComb<SeriesWord> qshuffle_mid(const SeriesWord& u, const SeriesWord& v) {
  if (u.empty() || v.empty()) throw EmptyOperand("u · v is undefined when either side is ∅");
  detail::ShuffleTable<Letter> table(u, v, true);
  return detail::ShuffleTable<Letter>::prepend(checked_add(u[0], v[0]), table.at(1, 1));
}

namespace {

template <class L>
LinComb<Word<L>> product_by_maps(const Word<L>& u, const Word<L>& v, Piece piece, bool quasi) {
  if (u.empty() || v.empty()) {
    if (piece != Piece::Full) throw EmptyOperand("split products need non-empty operands");
    return LinComb<Word<L>>(u.empty() ? v : u);
  }
  const Word<L> joined = u.concatenated(v);
  const int k = static_cast<int>(u.size());
  const int l = static_cast<int>(v.size());
  const auto maps = quasi ? enumerate_quasi_shuffles(k, l) : enumerate_shuffles(k, l);
  LinComb<Word<L>> out;
  for (const auto& sigma : maps) {
    if (!selects_piece(sigma, piece)) continue;
    std::vector<L> letters;
    letters.reserve(static_cast<std::size_t>(sigma.max));
    for (int m = 1; m <= sigma.max; ++m) {
      const auto f = sigma.fiber(m);
      L letter = joined[static_cast<std::size_t>(f[0] - 1)];
      if constexpr (std::is_same_v<L, Letter>) {
        if (f.size() == 2) letter = checked_add(letter, joined[static_cast<std::size_t>(f[1] - 1)]);
      }
      letters.push_back(letter);
    }
    out.add_term(Word<L>(std::move(letters)), Rational(1));
  }
  return out;
}

}  // namespace

LinComb<SeriesWord> qshuffle_by_maps(const SeriesWord& u, const SeriesWord& v, Piece piece) {
  return product_by_maps(u, v, piece, true);
}

template <class L>
LinComb<Word<L>> shuffle_by_maps(const Word<L>& u, const Word<L>& v, Piece piece) {
  if (piece == Piece::Middle) return {};
  return product_by_maps(u, v, piece, false);
}

template LinComb<SeriesWord> shuffle_by_maps(const SeriesWord&, const SeriesWord&, Piece);
template LinComb<IntegralWord> shuffle_by_maps(const IntegralWord&, const IntegralWord&, Piece);

LinComb<SeriesWord> qshuffle(const LinComb<SeriesWord>& a, const LinComb<SeriesWord>& b) {
  return bilinear_extend([](const SeriesWord& u, const SeriesWord& v) { return qshuffle(u, v); }, a, b);
}

LinComb<IntegralWord> shuffle(const LinComb<IntegralWord>& a, const LinComb<IntegralWord>& b) {
  return bilinear_extend([](const IntegralWord& u, const IntegralWord& v) { return shuffle(u, v); }, a, b);
}

// ---------------------------------------------------------------------------

IntegralWord binarize(const SeriesWord& w) {
  std::vector<Bin> out;
  for (Letter n : w.letters()) {
    if (n - 1 > static_cast<Letter>(1) << 32) throw LetterOverflow("letter too large to binarize");
    out.insert(out.end(), static_cast<std::size_t>(n - 1), Bin::x);
    out.push_back(Bin::y);
  }
  return IntegralWord(std::move(out));
}

SeriesWord unbinarize(const IntegralWord& w) {
  if (!w.empty() && w.back() != Bin::y) {
    throw NotInImage("word '" + to_string(w) + "' does not end with y, so it is not a binarized word");
  }
  std::vector<Letter> out;
  Letter run = 1;
  for (Bin b : w.letters()) {
    if (b == Bin::x) {
      ++run;
    } else {
      out.push_back(run);
      run = 1;
    }
  }
  return SeriesWord(std::move(out));
}

LinComb<IntegralWord> binarize(const LinComb<SeriesWord>& a) {
  LinComb<IntegralWord> out;
  for (const auto& [w, c] : a) out.add_term(binarize(w), c);
  return out;
}

bool is_convergent_series_word(const SeriesWord& w) { return w.empty() || w.front() != 1; }

bool is_convergent_integral_word(const IntegralWord& w) {
  return w.empty() || (w.front() == Bin::x && w.back() == Bin::y);
}

}  // namespace dzeta
