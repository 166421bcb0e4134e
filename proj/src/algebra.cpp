#include "dzeta/algebra.hpp"

#include <string>

namespace dzeta {

std::string_view to_string(Piece piece) {
  switch (piece) {
    case Piece::Left:
      return "left";
    case Piece::Right:
      return "right";
    case Piece::Middle:
      return "mid";
    case Piece::Full:
      return "full";
  }
  return "full";
}

Piece parse_piece(std::string_view text) {
  if (text == "left" || text == "<") return Piece::Left;
  if (text == "right" || text == ">") return Piece::Right;
  if (text == "mid" || text == "middle" || text == ".") return Piece::Middle;
  if (text == "full" || text == "*") return Piece::Full;
  throw ParseError("unknown product piece '" + std::string(text) + "' (expected left|right|mid|full)", 0);
}

}  // namespace dzeta
