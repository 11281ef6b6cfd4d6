#include "fabius/evaluate.hpp"

#include <string>
#include <vector>

#include "fabius/errors.hpp"
#include "fabius/number_theory.hpp"

namespace fabius {

namespace {

// e with 2^e <= x < 2^{e+1}, for x > 0.
long floor_log2(const Rational& x) {
  const long e = static_cast<long>(mpz_sizeinbase(x.mpq().get_num_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(x.mpq().get_den_mpz_t(), 2));
  return x < ldexp(Rational(1), e) ? e - 1 : e;
}

// d_j / (j! 2^{C(j,2)}); the unchecked form used inside the reduction loop.
Rational inverse_power_value(unsigned long j, SequenceCache& cache) {
  return ldexp(cache.half_moment(j), -choose2(static_cast<long>(j))) / Rational(factorial(j));
}

}  // namespace

DyadicPoint::DyadicPoint(BigInt a, unsigned long n) : a_(std::move(a)), n_(n) {
  if (a_ == 0) {
    n_ = 0;
    return;
  }
  const unsigned long twos = mpz_scan1(a_.get_mpz_t(), 0);
  const unsigned long shift = twos < n_ ? twos : n_;
  mpz_tdiv_q_2exp(a_.get_mpz_t(), a_.get_mpz_t(), shift);
  n_ -= shift;
}

std::optional<DyadicPoint> DyadicPoint::from_rational(const Rational& x) {
  const BigInt den = x.denominator();
  if (!is_power_of_two(den)) return std::nullopt;
  return DyadicPoint(x.numerator(), mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
}

Rational DyadicPoint::value() const { return ldexp(Rational(a_), -static_cast<long>(n_)); }

bool is_dyadic(const Rational& x) { return is_power_of_two(x.denominator()); }

std::string_view to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::explicit_sum: return "explicit";
    case EvalMethod::reduction: return "reduction";
    case EvalMethod::closed_form: return "closed_form";
    case EvalMethod::approximation: return "approx";
  }
  return "unknown";
}

Rational fabius_explicit(const BigInt& a, unsigned long n, SequenceCache& cache) {
  if (a < 0 || a > pow2(n)) {
    throw std::domain_error("fabius_explicit: numerator " + a.get_str() + " outside [0, 2^" +
                            std::to_string(n) + "]");
  }
  if (n >= 63) throw std::length_error("fabius_explicit: level too large to enumerate");
  const unsigned long count = a.get_ui();
  const unsigned long half = n / 2;

  // inner[k] = sum_{h<a} (-1)^{w(h)} (2a-2h-1)^{n-2k}
  std::vector<BigInt> inner(half + 1);
  BigInt power;
  for (unsigned long h = 0; h < count; ++h) {
    const unsigned long base = 2 * (count - h) - 1;
    const bool negative = binary_digit_sum(static_cast<std::uint64_t>(h)) % 2 == 1;
    for (unsigned long k = 0; k <= half; ++k) {
      mpz_ui_pow_ui(power.get_mpz_t(), base, n - 2 * k);
      if (negative) {
        inner[k] -= power;
      } else {
        inner[k] += power;
      }
    }
  }

  Rational total;
  for (unsigned long k = 0; k <= half; ++k) {
    total += Rational(BigInt(binomial(n, 2 * k) * inner[k])) * cache.moment(k);
  }
  return ldexp(total, -choose2(static_cast<long>(n) + 1)) / Rational(factorial(n));
}

Rational fabius_explicit(const DyadicPoint& p, SequenceCache& cache) {
  return fabius_explicit(p.numerator(), p.level(), cache);
}

Rational fabius_at_inverse_power(unsigned long n, SequenceCache& cache) {
  const Rational via_half_moment = inverse_power_value(n, cache);
  const BigInt denominator = factorial(n) * factorial(n + 1) * mersenne_product(n, 1);
  const Rational via_numerator =
      ldexp(Rational(cache.half_moment_numerator(n), denominator), -choose2(static_cast<long>(n)));
  if (via_half_moment != via_numerator) {
    throw IdentityViolation("F(2^-" + std::to_string(n) + "): half-moment form " + via_half_moment.to_string() +
                            " differs from closed form " + via_numerator.to_string());
  }
  return via_half_moment;
}

ReductionStep reduce_step(const Rational& x, SequenceCache& cache) {
  if (x.sign() <= 0) throw std::domain_error("reduce_step: x must be positive, got " + x.to_string());
  const long e = floor_log2(x);
  ReductionStep step{-e, x - ldexp(Rational(1), e), Rational()};
  if (step.exponent < 0) return step;

  // sum_{k=0}^{n} F^{(k)}(2^-n) y^k / k!, by Horner in y.
  const auto n = static_cast<unsigned long>(step.exponent);
  const auto& row = cache.derivative_row(n);
  const auto& y = step.rest.mpq();
  BigInt acc = row.numerators[n];
  if (is_power_of_two(y.get_den())) {
    // y = b / 2^s: sum_k e_k b^k 2^{s(n-k)} over L 2^{sn}, all in integers.
    const auto s = mpz_sizeinbase(y.get_den_mpz_t(), 2) - 1;
    BigInt term;
    for (unsigned long k = n; k-- > 0;) {
      acc *= y.get_num();
      mpz_mul_2exp(term.get_mpz_t(), row.numerators[k].get_mpz_t(), s * (n - k));
      acc += term;
    }
    BigInt den;
    mpz_mul_2exp(den.get_mpz_t(), row.denominator.get_mpz_t(), s * n);
    step.sum = Rational(acc, den);
    return step;
  }
  Rational sum(acc);
  for (unsigned long k = n; k-- > 0;) sum = sum * step.rest + Rational(row.numerators[k]);
  step.sum = sum / Rational(row.denominator);
  return step;
}

EvalResult fabius_eval(const Rational& x, const Rational& eps, SequenceCache& cache) {
  if (eps.sign() < 0) throw std::invalid_argument("fabius_eval: eps must be >= 0, got " + eps.to_string());
  if (x.sign() <= 0) return {Rational(), Rational(), EvalMethod::closed_form};

  const bool dyadic = is_dyadic(x);
  if (!dyadic && eps.is_zero()) {
    throw NonTerminatingEvaluation("exact evaluation needs a dyadic point, got " + x.to_string() +
                                   "; pass a positive eps");
  }

  Rational threshold;
  Rational bound;
  if (!dyadic) {
    unsigned long m = 0;
    bound = Rational(1);
    while (bound > eps) bound = inverse_power_value(++m, cache);
    threshold = ldexp(Rational(1), -static_cast<long>(m));
  }

  Rational total;
  Rational current = x;
  bool negate = false;
  while (!current.is_zero()) {
    if (!dyadic && current < threshold) return {total, bound, EvalMethod::approximation};
    ReductionStep step = reduce_step(current, cache);
    total += negate ? -step.sum : step.sum;
    negate = !negate;
    current = std::move(step.rest);
  }
  return {total, Rational(), EvalMethod::reduction};
}

EvalResult up_eval(const Rational& t, const Rational& eps, SequenceCache& cache) {
  if (t < Rational(-1) || t > Rational(1)) return {Rational(), Rational(), EvalMethod::closed_form};
  return fabius_eval(t.sign() <= 0 ? t + Rational(1) : Rational(1) - t, eps, cache);
}

EvalResult fabius_derivative(unsigned long k, const Rational& x, const Rational& eps, SequenceCache& cache) {
  const long scale = choose2(static_cast<long>(k) + 1);
  EvalResult inner = fabius_eval(ldexp(x, static_cast<long>(k)), ldexp(eps, -scale), cache);
  inner.value = ldexp(inner.value, scale);
  inner.error_bound = ldexp(inner.error_bound, scale);
  return inner;
}

}  // namespace fabius
