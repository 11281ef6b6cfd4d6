#include "fabius/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace fabius {

namespace {

bool is_digit_run(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return false;
  }
  return true;
}

}  // namespace

Rational::Rational(const BigInt& numerator, const BigInt& denominator)
    : value_(numerator, denominator) {
  if (denominator == 0) throw std::domain_error("Rational: zero denominator");
  value_.canonicalize();
}

Rational Rational::from_mpq(const mpq_class& value) {
  Rational out;
  out.value_ = value;
  out.value_.canonicalize();
  return out;
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str(10);
  return value_.get_num().get_str(10) + "/" + value_.get_den().get_str(10);
}

Rational Rational::parse(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num_text = body.substr(0, slash);
  const std::string_view den_text =
      slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!is_digit_run(num_text) || !is_digit_run(den_text)) {
    throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  }
  BigInt num(std::string(num_text), 10);
  BigInt den(std::string(den_text), 10);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  if (negative) num = -num;
  return Rational(num, den);
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational out;
  out.value_ = -value_;
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, unsigned long e) {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), r.mpq().get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), r.mpq().get_den_mpz_t(), e);
  // gcd(p^e, q^e) = 1 already, but the constructor canonicalizes cheaply.
  return Rational(num, den);
}

Rational ldexp(const Rational& r, long e) {
  mpq_class out;
  if (e >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), r.mpq().get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(out.get_mpq_t(), r.mpq().get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return Rational::from_mpq(out);
}

}  // namespace fabius
