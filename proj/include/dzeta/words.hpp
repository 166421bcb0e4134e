#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dzeta/algebra.hpp"
#include "dzeta/lincomb.hpp"

namespace dzeta {

/// Letters of W_{N*}. Values are >= 1; sums are overflow-checked.
using Letter = std::uint64_t;

/// Letters of W_{x,y}; x orders before y.
enum class Bin : std::uint8_t { x, y };

Letter checked_add(Letter a, Letter b);
char to_char(Bin b);

template <class L>
class Word {
 public:
  using letter_type = L;

  Word() = default;
  explicit Word(std::vector<L> letters) : letters_(std::move(letters)) { validate(); }
  Word(std::initializer_list<L> letters) : letters_(letters) { validate(); }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const L& operator[](std::size_t i) const { return letters_[i]; }
  const L& front() const { return letters_.front(); }
  const L& back() const { return letters_.back(); }
  std::span<const L> letters() const { return letters_; }

  Word suffix(std::size_t from) const {
    return Word(std::vector<L>(letters_.begin() + static_cast<std::ptrdiff_t>(from), letters_.end()), trusted{});
  }

  Word prepended(L letter) const {
    std::vector<L> out;
    out.reserve(letters_.size() + 1);
    out.push_back(letter);
    out.insert(out.end(), letters_.begin(), letters_.end());
    return Word(std::move(out));
  }

  Word concatenated(const Word& other) const {
    std::vector<L> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out), trusted{});
  }

  friend bool operator==(const Word&, const Word&) = default;

  /// Canonical basis order: shorter words first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.letters_[i] != b.letters_[i]) return a.letters_[i] <=> b.letters_[i];
    }
    return std::strong_ordering::equal;
  }

 private:
  struct trusted {};
  Word(std::vector<L> letters, trusted) : letters_(std::move(letters)) {}

  void validate() const {
    if constexpr (std::is_same_v<L, Letter>) {
      for (Letter l : letters_) {
        if (l == 0) throw InvalidStructure("letters of N* words must be >= 1");
      }
    }
  }

  std::vector<L> letters_;
};

using SeriesWord = Word<Letter>;
using IntegralWord = Word<Bin>;

/// `2 1 1` for series words, `xyy` for integral words, `()` for the empty word.
std::string to_string(const SeriesWord& w);
std::string to_string(const IntegralWord& w);

/// Accepts `2 1 1`, `(2 1 1)` and `()`.
SeriesWord parse_series_word(std::string_view text);
/// Accepts `xyy`, `(xyy)` and `()`.
IntegralWord parse_integral_word(std::string_view text);

template <>
struct BasisText<SeriesWord> {
  static std::string term(const SeriesWord& w);
  static SeriesWord parse_term(std::string_view text, std::size_t offset);
};

template <>
struct BasisText<IntegralWord> {
  static std::string term(const IntegralWord& w);
  static IntegralWord parse_term(std::string_view text, std::size_t offset);
};

// ---------------------------------------------------------------------------
// (k,l)-shuffles and quasi-shuffles

/// A surjection σ : {1..k+l} ->> {1..max} increasing on {1..k} and on {k+1..k+l}.
/// `values[i-1]` holds σ(i). Shuffles are the bijective case (max = k + l).
struct SurjectionMap {
  int k = 0;
  int l = 0;
  std::vector<int> values;
  int max = 0;

  /// σ⁻¹({m}) as 1-based indices in increasing order.
  std::vector<int> fiber(int m) const;

  friend bool operator==(const SurjectionMap&, const SurjectionMap&) = default;
};

using QuasiShuffleMap = SurjectionMap;
using ShuffleMap = SurjectionMap;

/// All (k,l)-shuffles, lexicographic in `values`.
std::vector<ShuffleMap> enumerate_shuffles(int k, int l);
/// All (k,l)-quasi-shuffles, lexicographic in `values`.
std::vector<QuasiShuffleMap> enumerate_quasi_shuffles(int k, int l);

/// Monotone blocks, surjectivity, and fibers of size 1 or 2 straddling k.
bool is_valid_quasi_shuffle(const SurjectionMap& sigma);

/// Whether σ⁻¹({1}) selects the requested piece ({1}, {k+1}, {1,k+1}, anything).
bool selects_piece(const SurjectionMap& sigma, Piece piece);

// ---------------------------------------------------------------------------
// Products

namespace detail {

/// Memoized recursion over suffix pairs for ⧢ (merge = false) and ⊛ (merge = true).
template <class L>
class ShuffleTable {
 public:
  ShuffleTable(const Word<L>& u, const Word<L>& v, bool merge)
      : u_(u), v_(v), merge_(merge), memo_((u.size() + 1) * (v.size() + 1)) {}

  const LinComb<Word<L>>& at(std::size_t i, std::size_t j) {
    auto& slot = memo_[i * (v_.size() + 1) + j];
    if (slot) return *slot;
    LinComb<Word<L>> out;
    if (i == u_.size()) {
      out.add_term(v_.suffix(j), Rational(1));
    } else if (j == v_.size()) {
      out.add_term(u_.suffix(i), Rational(1));
    } else {
      out += prepend(u_[i], at(i + 1, j));
      out += prepend(v_[j], at(i, j + 1));
      if constexpr (std::is_same_v<L, Letter>) {
        if (merge_) out += prepend(checked_add(u_[i], v_[j]), at(i + 1, j + 1));
      }
    }
    slot = std::move(out);
    return *slot;
  }

  static LinComb<Word<L>> prepend(L letter, const LinComb<Word<L>>& body) {
    LinComb<Word<L>> out;
    for (const auto& [w, c] : body) out.add_term(w.prepended(letter), c);
    return out;
  }

 private:
  const Word<L>& u_;
  const Word<L>& v_;
  bool merge_;
  std::vector<std::optional<LinComb<Word<L>>>> memo_;
};

}  // namespace detail

/// u ⧢ v with the unit laws u ⧢ ∅ = ∅ ⧢ u = u.
template <class L>
LinComb<Word<L>> shuffle(const Word<L>& u, const Word<L>& v) {
  detail::ShuffleTable<L> table(u, v, false);
  return table.at(0, 0);
}

/// u ≺ v = u₁(u₂…uₙ ⧢ v). Raises EmptyOperand when u = ∅.
template <class L>
LinComb<Word<L>> shuffle_left(const Word<L>& u, const Word<L>& v) {
  if (u.empty()) throw EmptyOperand("u ≺ v is undefined for u = ∅");
  detail::ShuffleTable<L> table(u, v, false);
  return detail::ShuffleTable<L>::prepend(u[0], table.at(1, 0));
}

/// u ≻ v = v₁(u ⧢ v₂…vₖ). Raises EmptyOperand when v = ∅.
template <class L>
LinComb<Word<L>> shuffle_right(const Word<L>& u, const Word<L>& v) {
  if (v.empty()) throw EmptyOperand("u ≻ v is undefined for v = ∅");
  detail::ShuffleTable<L> table(u, v, false);
  return detail::ShuffleTable<L>::prepend(v[0], table.at(0, 1));
}

LinComb<SeriesWord> qshuffle(const SeriesWord& u, const SeriesWord& v);
LinComb<SeriesWord> qshuffle_left(const SeriesWord& u, const SeriesWord& v);
LinComb<SeriesWord> qshuffle_right(const SeriesWord& u, const SeriesWord& v);
LinComb<SeriesWord> qshuffle_mid(const SeriesWord& u, const SeriesWord& v);

/// Non-inductive forms: sums over Sh(k,l) / QSh(k,l) filtered by σ⁻¹({1}).
LinComb<SeriesWord> qshuffle_by_maps(const SeriesWord& u, const SeriesWord& v, Piece piece);
template <class L>
LinComb<Word<L>> shuffle_by_maps(const Word<L>& u, const Word<L>& v, Piece piece);

/// Combination-level products (bilinear extensions).
LinComb<SeriesWord> qshuffle(const LinComb<SeriesWord>& a, const LinComb<SeriesWord>& b);
LinComb<IntegralWord> shuffle(const LinComb<IntegralWord>& a, const LinComb<IntegralWord>& b);

/// (W_{N*}, ≺, ≻, ·) with the quasi-shuffle splits.
struct QuasiShuffleAlgebra {
  using Basis = SeriesWord;
  static constexpr bool has_middle = true;
  static LinComb<Basis> left(const Basis& u, const Basis& v) { return qshuffle_left(u, v); }
  static LinComb<Basis> right(const Basis& u, const Basis& v) { return qshuffle_right(u, v); }
  static LinComb<Basis> middle(const Basis& u, const Basis& v) { return qshuffle_mid(u, v); }
  static LinComb<Basis> full(const Basis& u, const Basis& v) { return qshuffle(u, v); }
};

/// (W_Ω, ≺, ≻) with the shuffle splits; the middle product vanishes.
template <class L>
struct ShuffleAlgebra {
  using Basis = Word<L>;
  static constexpr bool has_middle = false;
  static LinComb<Basis> left(const Basis& u, const Basis& v) { return shuffle_left(u, v); }
  static LinComb<Basis> right(const Basis& u, const Basis& v) { return shuffle_right(u, v); }
  static LinComb<Basis> middle(const Basis&, const Basis&) { return {}; }
  static LinComb<Basis> full(const Basis& u, const Basis& v) { return shuffle(u, v); }
};

// ---------------------------------------------------------------------------
// Binarization and convergence

/// n₁…n_k ↦ x^{n₁−1} y … x^{n_k−1} y.
IntegralWord binarize(const SeriesWord& w);
/// Inverse of binarize on its image; raises NotInImage unless w = ∅ or w ends with y.
SeriesWord unbinarize(const IntegralWord& w);

LinComb<IntegralWord> binarize(const LinComb<SeriesWord>& a);

/// ∅ or first letter different from 1.
bool is_convergent_series_word(const SeriesWord& w);
/// ∅ or of the form x…y.
bool is_convergent_integral_word(const IntegralWord& w);

}  // namespace dzeta
