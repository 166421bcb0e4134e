#pragma once

#include <concepts>
#include <string_view>

#include "dzeta/lincomb.hpp"

namespace dzeta {

/// The three pieces of a tridendriform product (≺, ≻, ·) and their sum *.
enum class Piece { Left, Right, Middle, Full };

std::string_view to_string(Piece piece);
Piece parse_piece(std::string_view text);

/// A tridendriform algebra presented on a basis: the three split products of
/// two basis elements. Dendriform algebras set `has_middle = false` and return
/// an empty combination from `middle`.
template <class A>
concept TridendriformAlgebra = requires(const typename A::Basis& u) {
  { A::left(u, u) } -> std::same_as<LinComb<typename A::Basis>>;
  { A::right(u, u) } -> std::same_as<LinComb<typename A::Basis>>;
  { A::middle(u, u) } -> std::same_as<LinComb<typename A::Basis>>;
  { A::has_middle } -> std::convertible_to<bool>;
};

template <TridendriformAlgebra A>
LinComb<typename A::Basis> basis_product(Piece piece, const typename A::Basis& u, const typename A::Basis& v) {
  switch (piece) {
    case Piece::Left:
      return A::left(u, v);
    case Piece::Right:
      return A::right(u, v);
    case Piece::Middle:
      return A::middle(u, v);
    case Piece::Full:
      break;
  }
  if constexpr (requires { A::full(u, v); }) {
    return A::full(u, v);
  }
  auto out = A::left(u, v);
  out += A::right(u, v);
  if constexpr (A::has_middle) out += A::middle(u, v);
  return out;
}

/// Bilinear extension of one piece to combinations (no unit involved).
template <TridendriformAlgebra A>
LinComb<typename A::Basis> product(Piece piece, const LinComb<typename A::Basis>& a,
                                   const LinComb<typename A::Basis>& b) {
  using B = typename A::Basis;
  return bilinear_extend([piece](const B& u, const B& v) { return basis_product<A>(piece, u, v); }, a, b);
}

/// Element of the augmented algebra Ā = A ⊕ K·1.
template <class B>
struct Augmented {
  Rational unit;
  LinComb<B> body;

  friend bool operator==(const Augmented&, const Augmented&) = default;
};

/// Products on Ā with the unit conventions
///   1 ≺ a = 0 = a ≻ 1,  a ≺ 1 = a = 1 ≻ a,  a·1 = 0 = 1·a,  1 * 1 = 1.
/// The pieces 1 ≺ 1, 1 ≻ 1 and 1·1 are undefined and raise EmptyOperand.
template <TridendriformAlgebra A>
Augmented<typename A::Basis> augmented_product(Piece piece, const Augmented<typename A::Basis>& a,
                                               const Augmented<typename A::Basis>& b) {
  Augmented<typename A::Basis> out;
  const bool units_meet = !a.unit.is_zero() && !b.unit.is_zero();
  if (units_meet && piece != Piece::Full) {
    throw EmptyOperand("product of the unit with itself is only defined for the full product");
  }
  out.body = product<A>(piece, a.body, b.body);
  switch (piece) {
    case Piece::Left:
      out.body.add_scaled(b.unit, a.body);
      break;
    case Piece::Right:
      out.body.add_scaled(a.unit, b.body);
      break;
    case Piece::Middle:
      break;
    case Piece::Full:
      out.unit = a.unit * b.unit;
      out.body.add_scaled(b.unit, a.body);
      out.body.add_scaled(a.unit, b.body);
      break;
  }
  return out;
}

}  // namespace dzeta
