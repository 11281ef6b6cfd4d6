#include "fabius/number_theory.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

namespace fabius {

unsigned binary_digit_sum(std::uint64_t n) { return static_cast<unsigned>(std::popcount(n)); }

unsigned long binary_digit_sum(const BigInt& n) {
  if (n < 0) throw std::domain_error("binary_digit_sum: negative argument");
  return mpz_popcount(n.get_mpz_t());
}

long dyadic_valuation(const Rational& r) {
  if (r.is_zero()) throw std::domain_error("dyadic_valuation: valuation of 0 is infinite");
  // One of numerator, denominator is odd; the other carries all factors of 2.
  const long num_twos = static_cast<long>(mpz_scan1(r.mpq().get_num_mpz_t(), 0));
  const long den_twos = static_cast<long>(mpz_scan1(r.mpq().get_den_mpz_t(), 0));
  return num_twos - den_twos;
}

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt out;
  if (k > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigInt pow2(unsigned long e) {
  BigInt out;
  mpz_setbit(out.get_mpz_t(), e);
  return out;
}

BigInt double_factorial(long m) {
  if (m < -1) throw std::invalid_argument("double_factorial: m must be >= -1, got " + std::to_string(m));
  if (m <= 0) return 1;
  BigInt out;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
  return out;
}

BigInt mersenne_product(unsigned long count, unsigned long step) {
  BigInt out = 1;
  for (unsigned long k = 1; k <= count; ++k) out *= pow2(step * k) - 1;
  return out;
}

bool is_power_of_two(const BigInt& n) { return n > 0 && mpz_popcount(n.get_mpz_t()) == 1; }

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d <= p / d; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

OddBinomialCounts odd_binomial_counts(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("odd_binomial_counts: n must be >= 1");
  const std::uint64_t m = 2 * n + 1;
  // twos[j] = nu_2(j!)
  std::vector<std::uint64_t> twos(m + 1, 0);
  for (std::uint64_t j = 1; j <= m; ++j) twos[j] = twos[j - 1] + static_cast<std::uint64_t>(std::countr_zero(j));

  OddBinomialCounts counts{0, 0};
  for (std::uint64_t k = 0; k <= m; ++k) {
    const bool odd = twos[m] == twos[k] + twos[m - k];
    if (!odd) continue;
    ++counts.full_row;
    if (k % 2 == 0) ++counts.even_lower;
  }
  return counts;
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p) {
  std::uint64_t out = 1 % p;
  base %= p;
  while (e > 0) {
    if (e & 1) out = mul_mod(out, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return out;
}

// C(n, k) mod p for digits 0 <= k, n < p.
std::uint64_t small_binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (k > n) return 0;
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num = mul_mod(num, n - i, p);
    den = mul_mod(den, i + 1, p);
  }
  return mul_mod(num, pow_mod(den, p - 2, p), p);
}

}  // namespace

std::uint64_t lucas_binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("lucas_binomial_mod: " + std::to_string(p) + " is not prime");
  std::uint64_t out = 1 % p;
  while ((n > 0 || k > 0) && out != 0) {
    out = mul_mod(out, small_binomial_mod(n % p, k % p, p), p);
    n /= p;
    k /= p;
  }
  return out;
}

}  // namespace fabius
