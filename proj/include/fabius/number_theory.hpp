#pragma once

#include <cstdint>

#include "fabius/rational.hpp"

namespace fabius {

/// Number of ones in the binary expansion of n.
unsigned binary_digit_sum(std::uint64_t n);
unsigned long binary_digit_sum(const BigInt& n);

/// Exponent of 2 in r, i.e. e with r = 2^e * (odd/odd). Throws
/// std::domain_error for r = 0.
long dyadic_valuation(const Rational& r);

/// C(n, 2) = n(n-1)/2 for n >= 0.
inline long choose2(long n) { return n * (n - 1) / 2; }

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);
BigInt pow2(unsigned long e);

/// m!! = m(m-2)(m-4)...; (-1)!! = 0!! = 1. Throws std::invalid_argument for m < -1.
BigInt double_factorial(long m);

/// prod_{k=1}^{count} (2^{step k} - 1); the empty product is 1.
BigInt mersenne_product(unsigned long count, unsigned long step);

bool is_power_of_two(const BigInt& n);
bool is_prime(std::uint64_t p);

struct OddBinomialCounts {
  std::uint64_t even_lower;  // odd C(2n+1, 2k), 0 <= k <= n
  std::uint64_t full_row;    // odd C(2n+1, k), 0 <= k <= 2n+1

  friend bool operator==(const OddBinomialCounts&, const OddBinomialCounts&) = default;
};

/// Counts odd entries of row 2n+1 of Pascal's triangle by scanning each entry's
/// parity. The parity of C(m, k) comes from the 2-adic valuations of m!, k!
/// and (m-k)!, accumulated one factor at a time. Throws for n = 0.
OddBinomialCounts odd_binomial_counts(std::uint64_t n);

/// C(n, k) mod p from the base-p digits of n and k. Throws
/// std::invalid_argument if p is not prime.
std::uint64_t lucas_binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p);

}  // namespace fabius
