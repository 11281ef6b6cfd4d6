#include "fabius/text.hpp"

#include <charconv>
#include <regex>
#include <stdexcept>

namespace fabius {

namespace {

long parse_exponent(std::string_view digits, std::string_view original) {
  long value = 0;
  const char* first = digits.data();
  if (!digits.empty() && digits.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("bad exponent in '" + std::string(original) + "'");
  }
  return value;
}

Rational pow10(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace

Rational parse_number(std::string_view text) {
  static const std::regex power_of_two(R"(([-+]?)2\^([-+]?\d+))");
  static const std::regex fraction(R"([-+]?\d+(/\d+)?)");
  static const std::regex decimal(R"(([-+]?)(\d*)(?:\.(\d*))?(?:[eE]([-+]?\d+))?)");

  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, power_of_two)) {
    const long e = parse_exponent(m.str(2), text);
    const Rational value = ldexp(Rational(1), e);
    return m.str(1) == "-" ? -value : value;
  }
  if (std::regex_match(s, fraction)) return Rational::parse(s);
  if (std::regex_match(s, m, decimal) && (m.length(2) > 0 || m.length(3) > 0)) {
    const std::string digits = m.str(2) + m.str(3);
    Rational value(BigInt(digits, 10));
    long e = -static_cast<long>(m.length(3));
    if (m.length(4) > 0) e += parse_exponent(m.str(4), text);
    value *= pow10(e);
    return m.str(1) == "-" ? -value : value;
  }
  throw std::invalid_argument("cannot read a number from '" + s + "'");
}

std::string format_decimal(const Rational& r, unsigned digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  // round(|r| * 10^digits), half away from zero
  const BigInt num = abs(r.numerator()) * scale;
  const BigInt den = r.denominator();
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), BigInt(2 * num + den).get_mpz_t(), BigInt(2 * den).get_mpz_t());

  std::string body = q.get_str();
  if (digits > 0) {
    if (body.size() <= digits) body.insert(0, digits + 1 - body.size(), '0');
    body.insert(body.size() - digits, 1, '.');
  }
  return (r.sign() < 0 && q != 0 ? "-" : "") + body;
}

}  // namespace fabius
