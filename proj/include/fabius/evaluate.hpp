#pragma once

#include <optional>
#include <string_view>

#include "fabius/rational.hpp"
#include "fabius/sequences.hpp"

namespace fabius {

/// a / 2^n, canonical when n = 0 or a is odd.
class DyadicPoint {
 public:
  DyadicPoint(BigInt a, unsigned long n);

  /// nullopt unless the reduced denominator of x is a power of two.
  static std::optional<DyadicPoint> from_rational(const Rational& x);

  const BigInt& numerator() const { return a_; }
  unsigned long level() const { return n_; }
  Rational value() const;

  friend bool operator==(const DyadicPoint&, const DyadicPoint&) = default;

 private:
  BigInt a_;
  unsigned long n_;
};

bool is_dyadic(const Rational& x);

enum class EvalMethod { explicit_sum, reduction, closed_form, approximation };

std::string_view to_string(EvalMethod method);

/// error_bound is zero exactly when method != approximation; the true value lies
/// in [value - error_bound, value + error_bound].
struct EvalResult {
  Rational value;
  Rational error_bound;
  EvalMethod method;
};

/// F(a/2^n) for 0 <= a <= 2^n by the closed sum
///
///   2^{-C(n+1,2)}/n! sum_k C(n,2k) c_k sum_{h<a} (-1)^{w(h)} (2a-2h-1)^{n-2k}.
///
/// Cost grows linearly in a; kept as an independent check of the reduction.
/// Throws std::domain_error for a outside [0, 2^n] and std::length_error if a
/// does not fit in 64 bits.
Rational fabius_explicit(const BigInt& a, unsigned long n, SequenceCache& cache);
Rational fabius_explicit(const DyadicPoint& p, SequenceCache& cache);

/// F(2^-n) = d_n / (n! 2^{C(n,2)}), checked against the G_n closed form.
Rational fabius_at_inverse_power(unsigned long n, SequenceCache& cache);

/// One step of the reduction F(x) = -F(y) + sum.
struct ReductionStep {
  long exponent;    // unique n with 2^-n <= x < 2^{-n+1}
  Rational rest;    // y = x - 2^-n
  Rational sum;     // Taylor part; zero when exponent < 0
};

/// Throws std::domain_error for x <= 0.
ReductionStep reduce_step(const Rational& x, SequenceCache& cache);

/// F(x) for x >= 0 (and 0 for x < 0).
///
/// Dyadic x is always evaluated exactly, in as many steps as x has binary ones.
/// Otherwise eps > 0 is required: reduction continues until the remainder y
/// drops below 2^-m, m being the least level with F(2^-m) <= eps, and the
/// result carries error_bound = F(2^-m).
///
/// Throws std::invalid_argument for eps < 0 and NonTerminatingEvaluation for
/// eps = 0 at a non-dyadic point.
EvalResult fabius_eval(const Rational& x, const Rational& eps, SequenceCache& cache);

/// Rvachev's up(t): F(t+1) on [-1,0], F(1-t) on [0,1], 0 outside.
EvalResult up_eval(const Rational& t, const Rational& eps, SequenceCache& cache);

/// F^{(k)}(x) = 2^{C(k+1,2)} F(2^k x). The inner evaluation is run at
/// eps / 2^{C(k+1,2)} so the returned bound stays within eps.
EvalResult fabius_derivative(unsigned long k, const Rational& x, const Rational& eps, SequenceCache& cache);

}  // namespace fabius
