#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dzeta {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A split product was asked to extract a letter (or root) from an empty operand.
class EmptyOperand : public Error {
 public:
  using Error::Error;
};

/// unbinarize() on a word outside the image of the binarization map.
class NotInImage : public Error {
 public:
  using Error::Error;
};

/// A tree operation that needs an internal root received the leaf `|`.
class LeafInput : public Error {
 public:
  using Error::Error;
};

/// A (quasi-)shuffle whose (k,l) signature disagrees with the comb lengths.
class ArityMismatch : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested on a word or tree outside the convergent subspace.
class DivergentWord : public Error {
 public:
  using Error::Error;
};

class NotConvergent : public Error {
 public:
  using Error::Error;
};

class DepthExceeded : public Error {
 public:
  using Error::Error;
};

class TooManyVertices : public Error {
 public:
  using Error::Error;
};

class TooManyColumns : public Error {
 public:
  using Error::Error;
};

/// Tree or word violating a structural invariant (arity, decoration bound, letter range).
class InvalidStructure : public Error {
 public:
  using Error::Error;
};

/// Letter arithmetic left the 64-bit range.
class LetterOverflow : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Text that does not parse under the documented grammars; `position` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dzeta
