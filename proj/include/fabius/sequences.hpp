#pragma once

#include <cstddef>
#include <deque>
#include <shared_mutex>
#include <vector>

#include "fabius/bernoulli.hpp"
#include "fabius/rational.hpp"

namespace fabius {

/// Memoized prefixes of the sequences that determine the values of the Fabius
/// function at dyadic points:
///
///   c_n  moments of up,      (2n+1)(4^n-1) c_n = sum_{k<n} C(2n+1,2k) c_k
///   d_n  half moments of up, (n+1)(2^n-1) d_n  = sum_{k<n} C(n+1,k) d_k
///   F_n  = c_n (2n+1)!! prod_{v=1}^{n} (4^v-1)
///   G_n  = d_n (n+1)!   prod_{k=1}^{n} (2^k-1)
///   R_n  = 2 d_n (2n-1)!! prod_{k=1}^{n/2} (4^k-1),   n >= 1
///
/// Every sequence grows bottom-up and monotonically. The integer sequences are
/// produced by two routes each and checked against one another; a mismatch or
/// a fractional value throws IdentityViolation.
///
/// Growth takes an exclusive lock; lookups of already computed entries take a
/// shared one. Returned references remain valid while the cache lives.
class SequenceCache {
 public:
  static constexpr std::size_t kDefaultIndexLimit = 4096;

  /// Indices above index_limit throw CacheLimitExceeded.
  explicit SequenceCache(std::size_t index_limit = default_index_limit());

  SequenceCache(const SequenceCache&) = delete;
  SequenceCache& operator=(const SequenceCache&) = delete;

  const Rational& moment(std::size_t n);
  const Rational& half_moment(std::size_t n);
  const BigInt& moment_numerator(std::size_t n);
  const BigInt& half_moment_numerator(std::size_t n);
  /// Throws std::invalid_argument for n = 0.
  const BigInt& reshetnikov(std::size_t n);

  /// Taylor coefficients of F at 2^-n over a common denominator:
  /// F^{(k)}(2^-n)/k! = numerators[k] / denominator for k = 0..n, where
  /// F^{(k)}(2^-n) = 2^{C(k+1,2)} d_{n-k} / ((n-k)! 2^{C(n-k,2)}).
  struct DerivativeRow {
    std::vector<BigInt> numerators;
    BigInt denominator;
  };
  const DerivativeRow& derivative_row(std::size_t n);

  BernoulliCache& bernoulli() { return bernoulli_; }

  std::size_t index_limit() const { return index_limit_; }

  /// FABIUS_CACHE_LIMIT from the environment, else kDefaultIndexLimit.
  static std::size_t default_index_limit();

 private:
  void check_limit(std::size_t n) const;
  void grow_moments(std::size_t n);
  void grow_half_moments(std::size_t n);
  void grow_moment_numerators(std::size_t n);
  void grow_half_moment_numerators(std::size_t n);
  void grow_reshetnikov(std::size_t n);
  void grow_derivative_rows(std::size_t n);

  std::size_t index_limit_;
  mutable std::shared_mutex mutex_;
  std::deque<Rational> c_;
  std::deque<Rational> d_;
  std::deque<BigInt> f_;
  std::deque<BigInt> g_;
  std::deque<BigInt> r_;  // r_[i] = R_{i+1}
  std::deque<DerivativeRow> rows_;
  BernoulliCache bernoulli_;
};

/// c_0 .. c_{n_max}
std::vector<Rational> moments(std::size_t n_max, SequenceCache& cache);
/// F_0 .. F_{n_max}
std::vector<BigInt> moment_numerators(std::size_t n_max, SequenceCache& cache);
/// d_0 .. d_{n_max}
std::vector<Rational> half_moments(std::size_t n_max, SequenceCache& cache);
/// G_0 .. G_{n_max}
std::vector<BigInt> half_moment_numerators(std::size_t n_max, SequenceCache& cache);
/// R_1 .. R_{n_max}; element i holds R_{i+1}. Throws for n_max = 0.
std::vector<BigInt> reshetnikov_numbers(std::size_t n_max, SequenceCache& cache);

/// d_n = 2^{-n} sum_{k <= n/2} C(n, 2k) c_k
Rational half_moment_from_moments(std::size_t n, SequenceCache& cache);

// The Bernoulli-number recurrences below share nothing with the cached c and
// d tables; they exist to be compared against them.

/// c_n = (4^n-1)^{-1} sum_{k=1}^{n} 4^{n-k} (4^k-2) C(2n,2k) B_{2k} c_{n-k}
std::vector<Rational> moments_via_bernoulli(std::size_t n_max, BernoulliCache& bernoulli);

/// d_n = n 2^{n-2}/(2^n-1) d_{n-1} - (2^n-1)^{-1} sum_{k=1}^{n/2} C(n,2k) 2^{n-2k} B_{2k} d_{n-2k}
std::vector<Rational> half_moments_via_bernoulli(std::size_t n_max, BernoulliCache& bernoulli);

/// R_{2n} = sum_{k=0}^{n} 2 F_k / 4^n C(2n,2k) (4n-1)!!/(2k+1)!! prod_{l=k+1}^{n} (4^l-1),
/// built from F_k only. Requires n >= 1.
Rational reshetnikov_even_from_numerators(std::size_t n, SequenceCache& cache);

}  // namespace fabius
