#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dzeta {

/// Exact rational number in canonical form (positive denominator, coprime parts).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(mpq_class value);

  /// Parses `p` or `p/q` with an optional leading minus sign.
  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }

  /// `p` when the denominator is 1, otherwise `p/q`.
  std::string to_string() const;
  double to_double() const { return value_.get_d(); }

  Rational abs() const;

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace dzeta
