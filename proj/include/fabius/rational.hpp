#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>

namespace fabius {

using BigInt = mpz_class;

/// Exact rational number, always stored reduced with a positive denominator.
/// Zero is 0/1.
///
/// Canonical text form is "p/q" in base 10, or "p" alone when q = 1, with the
/// sign carried by the numerator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}
  Rational(const BigInt& value) : value_(value) {}
  Rational(const BigInt& numerator, const BigInt& denominator);

  static Rational from_mpq(const mpq_class& value);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  std::string to_string() const;

  /// Parses "p/q" or "p" (optional leading '-' or '+'). The fraction need not be
  /// reduced on input. Throws std::invalid_argument on malformed text or q = 0.
  static Rational parse(std::string_view text);

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  Rational operator-() const;

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.value_ == rhs.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) {
    return cmp(lhs.value_, rhs.value_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  mpq_class value_;
};

Rational abs(const Rational& r);

/// r^e for a non-negative exponent.
Rational pow(const Rational& r, unsigned long e);

/// r * 2^e, exact for any sign of e.
Rational ldexp(const Rational& r, long e);

}  // namespace fabius
