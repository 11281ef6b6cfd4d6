#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fabius/errors.hpp"
#include "fabius/evaluate.hpp"
#include "fabius/number_theory.hpp"
#include "fabius/sequences.hpp"

using namespace fabius;

namespace {

Rational q(const char* text) { return Rational::parse(text); }
Rational dyadic(long a, long n) { return ldexp(Rational(a), -n); }

// Double sum over h and k, with the moments taken from a private recurrence.
class ExplicitOracle {
 public:
  explicit ExplicitOracle(unsigned n_max) : c_{Rational(1)} {
    for (unsigned n = 1; n <= n_max / 2; ++n) {
      Rational s;
      for (unsigned k = 0; k < n; ++k) s += Rational(binomial(2 * n + 1, 2 * k)) * c_[k];
      c_.push_back(s / Rational(BigInt((2 * n + 1) * (pow2(2 * n) - 1))));
    }
  }

  // F(a/2^n) for 0 <= a <= 2^n
  Rational operator()(long a, unsigned n) const {
    Rational total;
    for (long h = 0; h < a; ++h) {
      Rational inner;
      for (unsigned k = 0; 2 * k <= n; ++k) {
        BigInt base = 2 * a - 2 * h - 1, p;
        mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), n - 2 * k);
        inner += Rational(binomial(n, 2 * k) * p) * c_[k];
      }
      total += (binary_digit_sum(static_cast<std::uint64_t>(h)) % 2 ? -inner : inner);
    }
    return ldexp(total / Rational(factorial(n)), -choose2(n + 1));
  }

  // up(t) for |t| <= 1 on the dyadic grid, zero outside
  Rational up(const Rational& t) const {
    const Rational s = abs(t);
    if (s > Rational(1)) return Rational();
    const Rational x = Rational(1) - s;
    unsigned n = 0;
    while (!(ldexp(x, n)).is_integer()) ++n;
    return (*this)(ldexp(x, n).numerator().get_si(), n);
  }

 private:
  std::vector<Rational> c_;
};

}  // namespace

TEST_CASE("explicit sum at small points") {
  SequenceCache cache;
  CHECK(fabius_explicit(BigInt(1), 1, cache) == q("1/2"));
  CHECK(fabius_explicit(BigInt(1), 3, cache) == q("1/288"));
  CHECK(fabius_explicit(BigInt(3), 3, cache) == q("73/288"));
  CHECK(fabius_explicit(BigInt(0), 4, cache) == Rational(0));
  CHECK(fabius_explicit(BigInt(16), 4, cache) == Rational(1));
  CHECK(fabius_explicit(DyadicPoint(BigInt(6), 4), cache) == q("73/288"));
  CHECK_THROWS_AS(fabius_explicit(BigInt(9), 3, cache), std::domain_error);
  CHECK_THROWS_AS(fabius_explicit(BigInt(-1), 3, cache), std::domain_error);
}

TEST_CASE("dyadic points") {
  const DyadicPoint p(BigInt(12), 5);
  CHECK(p.numerator() == 3);
  CHECK(p.level() == 3);
  CHECK(p.value() == q("3/8"));
  CHECK(DyadicPoint::from_rational(q("3/8")) == DyadicPoint(BigInt(3), 3));
  CHECK_FALSE(DyadicPoint::from_rational(q("1/3")).has_value());
  CHECK(is_dyadic(Rational(5)));
  CHECK_FALSE(is_dyadic(q("2/7")));
}

TEST_CASE("values at inverse powers of two") {
  SequenceCache cache;
  CHECK(fabius_at_inverse_power(0, cache) == Rational(1));
  CHECK(fabius_at_inverse_power(2, cache) == q("5/72"));
  CHECK(fabius_at_inverse_power(3, cache) == q("1/288"));
  for (unsigned n = 0; n <= 40; ++n) {
    const Rational expected = cache.half_moment(n) / Rational(factorial(n) * pow2(choose2(n)));
    REQUIRE(fabius_at_inverse_power(n, cache) == expected);
  }
}

TEST_CASE("single reduction step") {
  SequenceCache cache;
  auto step = reduce_step(q("3/8"), cache);
  CHECK(step.exponent == 2);
  CHECK(step.rest == q("1/8"));
  CHECK(step.sum == q("37/144"));
  step = reduce_step(q("1/4"), cache);
  CHECK(step.exponent == 2);
  CHECK(step.rest.is_zero());
  CHECK(step.sum == q("5/72"));
  step = reduce_step(Rational(3), cache);
  CHECK(step.exponent == -1);
  CHECK(step.rest == Rational(1));
  CHECK(step.sum.is_zero());
  CHECK_THROWS_AS(reduce_step(Rational(0), cache), std::domain_error);
  CHECK_THROWS_AS(reduce_step(Rational(-1), cache), std::domain_error);
}

TEST_CASE("exact evaluation") {
  SequenceCache cache;
  auto r = fabius_eval(q("3/8"), Rational(), cache);
  CHECK(r.value == q("73/288"));
  CHECK(r.error_bound.is_zero());
  CHECK(r.method == EvalMethod::reduction);
  r = fabius_eval(Rational(0), Rational(), cache);
  CHECK(r.value.is_zero());
  CHECK(r.error_bound.is_zero());
  CHECK(fabius_eval(q("-5/4"), Rational(), cache).value.is_zero());
  CHECK(fabius_eval(q("3/8"), q("1/1000"), cache).value == q("73/288"));
  CHECK_THROWS_AS(fabius_eval(q("1/3"), Rational(), cache), NonTerminatingEvaluation);
  CHECK_THROWS_AS(fabius_eval(q("1/3"), q("-1"), cache), std::invalid_argument);
}

TEST_CASE("methods agree with the transcribed sum on the grid") {
  SequenceCache cache;
  const ExplicitOracle oracle(10);
  for (unsigned n = 0; n <= 10; ++n) {
    for (long a = 0; a <= (1L << n); ++a) {
      const Rational expected = oracle(a, n);
      REQUIRE(fabius_explicit(BigInt(a), n, cache) == expected);
      REQUIRE(fabius_eval(dyadic(a, n), Rational(), cache).value == expected);
    }
  }
}

TEST_CASE("symmetry and monotonicity on [0, 1]") {
  SequenceCache cache;
  const unsigned n = 9;
  std::vector<Rational> grid;
  for (long a = 0; a <= (1L << n); ++a) grid.push_back(fabius_eval(dyadic(a, n), Rational(), cache).value);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    REQUIRE(grid[i] + grid[grid.size() - 1 - i] == Rational(1));
    if (i > 0) REQUIRE(grid[i - 1] < grid[i]);
  }
}

TEST_CASE("values beyond [0, 1] follow the alternating series") {
  SequenceCache cache;
  const ExplicitOracle oracle(4);
  for (long m = 1; m <= 8; ++m) CHECK(fabius_eval(Rational(2 * m), Rational(), cache).value.is_zero());
  for (long m = 0; m <= 7; ++m) {
    const long sign = binary_digit_sum(static_cast<std::uint64_t>(m)) % 2 ? -1 : 1;
    CHECK(fabius_eval(Rational(2 * m + 1), Rational(), cache).value == Rational(sign));
  }
  for (long a = 1; a <= 16 * 16; ++a) {
    const Rational x = dyadic(a, 4);
    Rational expected;
    for (long h = 0; 2 * h <= 17; ++h) {
      const Rational term = oracle.up(x - Rational(2 * h + 1));
      expected += binary_digit_sum(static_cast<std::uint64_t>(h)) % 2 ? -term : term;
    }
    REQUIRE(fabius_eval(x, Rational(), cache).value == expected);
  }
}

TEST_CASE("up function") {
  SequenceCache cache;
  CHECK(up_eval(Rational(0), Rational(), cache).value == Rational(1));
  CHECK(up_eval(Rational(1) - dyadic(1, 3), Rational(), cache).value == q("1/288"));
  CHECK(up_eval(q("-7/8"), Rational(), cache).value == q("1/288"));
  CHECK(up_eval(Rational(2), Rational(), cache).value.is_zero());
  CHECK(up_eval(Rational(-1), Rational(), cache).value.is_zero());
}

TEST_CASE("derivatives") {
  SequenceCache cache;
  CHECK(fabius_derivative(1, q("1/4"), Rational(), cache).value == Rational(1));
  CHECK(fabius_derivative(0, Rational(1), Rational(), cache).value == Rational(1));
  CHECK(fabius_derivative(2, q("1/8"), Rational(), cache).value == Rational(4));
  for (long a = 0; a <= 32; ++a) {
    const Rational x = dyadic(a, 6);
    const Rational d1 = fabius_derivative(1, x, Rational(), cache).value;
    REQUIRE(d1 == Rational(2) * fabius_eval(Rational(2) * x, Rational(), cache).value);
  }
  const auto approx = fabius_derivative(1, q("1/7"), q("1/1000000"), cache);
  const auto exact_neighbour = fabius_eval(q("2/7"), q("1/100000000000"), cache);
  CHECK(approx.error_bound <= q("1/1000000"));
  CHECK(abs(approx.value - Rational(2) * exact_neighbour.value) <= approx.error_bound + q("2/100000000000"));
}

TEST_CASE("valuation at inverse powers of two") {
  SequenceCache cache;
  for (long n = 1; n <= 120; ++n) {
    const Rational v = fabius_at_inverse_power(static_cast<unsigned long>(n), cache);
    const long twos_in_factorial = n - static_cast<long>(binary_digit_sum(static_cast<std::uint64_t>(n)));
    REQUIRE(dyadic_valuation(v) == -choose2(n) - 1 - twos_in_factorial);
  }
}

TEST_CASE("approximations are sound") {
  SequenceCache cache;
  const ExplicitOracle oracle(15);
  for (const char* text : {"1/3", "2/7", "1/5", "5/11", "12/13", "7/3"}) {
    const Rational x = q(text);
    const auto coarse = fabius_eval(x, q("1/10000000000"), cache);
    const auto fine = fabius_eval(x, ldexp(Rational(1), -133), cache);
    CHECK(coarse.method == EvalMethod::approximation);
    CHECK(coarse.error_bound <= q("1/10000000000"));
    CHECK(fine.error_bound <= ldexp(Rational(1), -133));
    CHECK(abs(coarse.value - fine.value) <= q("1/10000000000"));

    if (x < Rational(1)) {
      const Rational scaled = ldexp(x, 15);
      const long lo = BigInt(scaled.numerator() / scaled.denominator()).get_si();
      const Rational f_lo = oracle(lo, 15), f_hi = oracle(lo + 1, 15);
      for (const auto* r : {&coarse, &fine}) {
        CHECK(r->value >= f_lo - r->error_bound);
        CHECK(r->value <= f_hi + r->error_bound);
      }
    }
  }
}
