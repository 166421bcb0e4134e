#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dzeta/errors.hpp"
#include "dzeta/rational.hpp"

namespace dzeta {

/// Text conventions for a basis type. Specialisations provide
///   static std::string term(const B&);          // form used inside a LinComb
///   static B parse_term(std::string_view, std::size_t offset);
template <class B>
struct BasisText;

/// Finite formal linear combination over an ordered basis with exact rational
/// coefficients. Zero coefficients are never stored; iteration follows the
/// basis order, so equal combinations serialize identically.
template <class B>
class LinComb {
 public:
  using Basis = B;
  using Terms = std::map<B, Rational>;
  using const_iterator = typename Terms::const_iterator;

  LinComb() = default;
  explicit LinComb(B basis, Rational coefficient = Rational(1)) {
    add_term(std::move(basis), coefficient);
  }

  void add_term(const B& basis, const Rational& coefficient) {
    if (coefficient.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(basis, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Terms& terms() const { return terms_; }

  Rational coefficient(const B& basis) const {
    auto it = terms_.find(basis);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Sum of all coefficients (the number of terms counted with multiplicity
  /// when every coefficient is a positive integer).
  Rational total_weight() const {
    Rational sum;
    for (const auto& [basis, c] : terms_) sum += c;
    return sum;
  }

  LinComb& operator+=(const LinComb& other) {
    for (const auto& [basis, c] : other.terms_) add_term(basis, c);
    return *this;
  }

  LinComb& operator-=(const LinComb& other) {
    for (const auto& [basis, c] : other.terms_) add_term(basis, -c);
    return *this;
  }

  /// Adds `scale * other` in place.
  void add_scaled(const Rational& scale, const LinComb& other) {
    if (scale.is_zero()) return;
    for (const auto& [basis, c] : other.terms_) add_term(basis, scale * c);
  }

  LinComb scaled(const Rational& c) const {
    LinComb out;
    if (c.is_zero()) return out;
    for (const auto& [basis, coeff] : terms_) out.terms_.emplace_hint(out.terms_.end(), basis, coeff * c);
    return out;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Rational& c, const LinComb& a) { return a.scaled(c); }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

  /// Linear extension of `f : B -> LinComb<C>`.
  template <class F>
  auto map_linear(F&& f) const {
    using Out = decltype(f(std::declval<const B&>()));
    Out out;
    for (const auto& [basis, c] : terms_) out.add_scaled(c, f(basis));
    return out;
  }

 private:
  Terms terms_;
};

template <class B>
LinComb<B> lincomb_add(const LinComb<B>& a, const LinComb<B>& b) {
  return a + b;
}

template <class B>
LinComb<B> lincomb_scale(const Rational& c, const LinComb<B>& a) {
  return a.scaled(c);
}

/// Σᵢⱼ cᵢ dⱼ f(bᵢ, b'ⱼ) for a = Σ cᵢ bᵢ and b = Σ dⱼ b'ⱼ.
template <class F, class B1, class B2>
auto bilinear_extend(F&& f, const LinComb<B1>& a, const LinComb<B2>& b) {
  using Out = decltype(f(std::declval<const B1&>(), std::declval<const B2&>()));
  Out out;
  for (const auto& [u, cu] : a) {
    for (const auto& [v, cv] : b) out.add_scaled(cu * cv, f(u, v));
  }
  return out;
}

namespace detail {

/// Splits a serialized combination at top-level ` + ` / ` - ` separators.
/// Returns (sign, term text, offset of the term in `text`).
struct RawTerm {
  bool negative = false;
  std::string_view text;
  std::size_t offset = 0;
};

std::vector<RawTerm> split_terms(std::string_view text);

/// Splits `coeff*basis`; returns the coefficient and the offset where the basis starts.
std::pair<Rational, std::size_t> split_coefficient(std::string_view term, std::size_t offset);

}  // namespace detail

/// Text form: `c1*b1 + c2*b2 - c3*b3`, coefficients as `p` or `p/q`, `0` for
/// the empty combination. The grammar is documented in docs/grammar.md.
template <class B>
std::string to_string(const LinComb<B>& a) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [basis, c] : a) {
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    out += c.abs().to_string();
    out += "*";
    out += BasisText<B>::term(basis);
    first = false;
  }
  return out;
}

template <class B>
LinComb<B> parse_lincomb(std::string_view text) {
  LinComb<B> out;
  for (const auto& raw : detail::split_terms(text)) {
    if (raw.text == "0") continue;
    auto [coeff, basis_offset] = detail::split_coefficient(raw.text, raw.offset);
    const auto basis_text = raw.text.substr(basis_offset - raw.offset);
    B basis = BasisText<B>::parse_term(basis_text, basis_offset);
    out.add_term(basis, raw.negative ? -coeff : coeff);
  }
  return out;
}

}  // namespace dzeta
