#include "dzeta/rational.hpp"

#include <cctype>
#include <ostream>

#include "dzeta/errors.hpp"

namespace dzeta {

namespace {

bool valid_integer(std::string_view digits) {
  if (digits.empty()) return false;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long numerator, long denominator) : value_(numerator, denominator) {
  if (denominator == 0) throw InvalidStructure("rational with zero denominator");
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!valid_integer(num)) throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  if (!valid_integer(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'", text.size() - body.size() + slash + 1);
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", text.size() - 1);
  if (negative) n = -n;
  return Rational(mpq_class(n, d));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::abs() const {
  mpq_class a = ::abs(value_);
  return Rational(std::move(a));
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw InvalidStructure("division by zero rational");
  value_ /= other.value_;
  return *this;
}

Rational Rational::operator-() const {
  mpq_class n = -value_;
  return Rational(std::move(n));
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

}  // namespace dzeta
