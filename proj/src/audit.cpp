#include "fabius/audit.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <utility>

#include "fabius/denominators.hpp"
#include "fabius/evaluate.hpp"
#include "fabius/number_theory.hpp"

namespace fabius {

namespace {

std::string text(const Rational& r) { return r.to_string(); }
std::string text(const BigInt& v) { return v.get_str(); }
std::string text(long v) { return std::to_string(v); }

class SuiteRun {
 public:
  SuiteRun(std::string suite, unsigned long n_min, unsigned long n_max)
      : start_(std::chrono::steady_clock::now()) {
    report_.suite = std::move(suite);
    report_.n_min = n_min;
    report_.n_max = n_max;
  }

  bool failed() const { return report_.first_failure.has_value(); }

  template <class E, class A>
  bool equal(unsigned long n, std::string check, const E& expected, const A& actual) {
    if (failed()) return false;
    if (expected == actual) return true;
    report_.first_failure = CheckFailure{n, std::move(check), text(expected), text(actual)};
    return false;
  }

  bool holds(unsigned long n, std::string check, bool ok, std::string detail = {}) {
    if (failed()) return false;
    if (ok) return true;
    report_.first_failure = CheckFailure{n, std::move(check), "true", detail.empty() ? "false" : std::move(detail)};
    return false;
  }

  void error(unsigned long n, const std::exception& e) {
    if (!failed()) report_.first_failure = CheckFailure{n, "no exception", "value", e.what()};
  }

  VerificationReport finish() {
    report_.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
    return std::move(report_);
  }

 private:
  std::chrono::steady_clock::time_point start_;
  VerificationReport report_;
};

bool is_odd(const BigInt& v) { return mpz_odd_p(v.get_mpz_t()) != 0; }

Rational inverse_power(unsigned long n) { return ldexp(Rational(1), -static_cast<long>(n)); }

}  // namespace

VerificationReport verify_reshetnikov(unsigned long n_max, SequenceCache& cache) {
  if (n_max < 1) throw std::invalid_argument("verify_reshetnikov: n_max must be >= 1");
  SuiteRun run("reshetnikov", 1, n_max);
  unsigned long n = 1;
  try {
    for (; n <= n_max && !run.failed(); ++n) {
      const BigInt& r = cache.reshetnikov(n);
      const Rational value = fabius_eval(inverse_power(n), Rational(), cache).value;
      const Rational by_definition =
          ldexp(value * Rational(BigInt(factorial(2 * n) * mersenne_product(n / 2, 2))),
                choose2(static_cast<long>(n) - 1));
      run.holds(n, "definition is integral", by_definition.is_integer(), by_definition.to_string()) &&
          run.equal(n, "definition equals half-moment form", Rational(r), by_definition) &&
          run.holds(n, "R_n > 0", r > 0, r.get_str()) && run.holds(n, "R_n odd", is_odd(r), r.get_str());
    }
  } catch (const std::exception& e) {
    run.error(n, e);
  }
  return run.finish();
}

VerificationReport verify_valuation(unsigned long n_max, SequenceCache& cache) {
  if (n_max < 1) throw std::invalid_argument("verify_valuation: n_max must be >= 1");
  SuiteRun run("valuation", 1, n_max);
  unsigned long n = 1;
  try {
    for (; n <= n_max && !run.failed(); ++n) {
      const Rational value = fabius_eval(inverse_power(n), Rational(), cache).value;
      const long expected = -choose2(static_cast<long>(n)) - 1 - dyadic_valuation(Rational(factorial(n)));
      run.equal(n, "nu_2(F(2^-n))", expected, dyadic_valuation(value));
    }
  } catch (const std::exception& e) {
    run.error(n, e);
  }
  return run.finish();
}

VerificationReport verify_parity(unsigned long n_max, SequenceCache& cache) {
  if (n_max < 1) throw std::invalid_argument("verify_parity: n_max must be >= 1");
  SuiteRun run("parity", 0, n_max);
  unsigned long n = 0;
  try {
    for (; n <= n_max && !run.failed(); ++n) {
      const BigInt& f = cache.moment_numerator(n);
      run.holds(n, "F_n odd", is_odd(f), f.get_str());
      const long twice_d = dyadic_valuation(Rational(2) * cache.half_moment(n));
      run.equal(n, "nu_2(2 d_n)", n == 0 ? 1L : 0L, twice_d);
      if (n >= 1) {
        const unsigned w = binary_digit_sum(static_cast<std::uint64_t>(n));
        const auto counts = odd_binomial_counts(n);
        run.equal(n, "odd C(2n+1,2k) count", BigInt(pow2(w)), BigInt(static_cast<unsigned long>(counts.even_lower)));
        run.equal(n, "odd C(2n+1,k) count", BigInt(pow2(w + 1)), BigInt(static_cast<unsigned long>(counts.full_row)));
      }
    }
  } catch (const std::exception& e) {
    run.error(n, e);
  }
  return run.finish();
}

VerificationReport verify_cross_identities(unsigned long n_max, SequenceCache& cache) {
  SuiteRun run("cross", 0, n_max);
  unsigned long n = 0;
  try {
    const auto c_bernoulli = moments_via_bernoulli(n_max, cache.bernoulli());
    const auto d_bernoulli = half_moments_via_bernoulli(2 * n_max + 1, cache.bernoulli());
    for (; n <= n_max && !run.failed(); ++n) {
      const long odd = static_cast<long>(2 * n + 1);
      const Rational& c = cache.moment(n);
      const BigInt& f = cache.moment_numerator(n);

      run.equal(n, "d_{2n+1} = (2n+1) c_n / 2", cache.half_moment(2 * n + 1), Rational(odd) * c / Rational(2));

      const Rational odd_ratio(double_factorial(2 * odd + 1 - 2), double_factorial(odd - 2));  // (4n+1)!!/(2n-1)!!
      run.equal(n, "R_{2n+1} = F_n (4n+1)!!/(2n-1)!!", Rational(cache.reshetnikov(2 * n + 1)),
                Rational(f) * odd_ratio);

      BigInt product = 1;
      for (unsigned long k = 0; k <= n; ++k) product *= pow2(2 * k + 1) - 1;
      const BigInt expected_g = pow2(n) * factorial(n + 1) * f * product;
      const BigInt& g = cache.half_moment_numerator(2 * n + 1);
      run.equal(n, "G_{2n+1}/(2n+1)", Rational(expected_g), Rational(g) / Rational(odd));
      run.holds(n, "(2n+1) F_n | G_{2n+1}",
                mpz_divisible_p(g.get_mpz_t(), BigInt(odd * f).get_mpz_t()) != 0);

      for (unsigned long m : {2 * n, 2 * n + 1}) {
        run.equal(n, "d_" + std::to_string(m) + " from moments", cache.half_moment(m),
                  half_moment_from_moments(m, cache));
        run.equal(n, "d_" + std::to_string(m) + " from Bernoulli", cache.half_moment(m), d_bernoulli[m]);
      }
      run.equal(n, "c_n from Bernoulli", c, c_bernoulli[n]);
      if (n >= 1) {
        run.equal(n, "R_{2n} from F_k expansion", Rational(cache.reshetnikov(2 * n)),
                  reshetnikov_even_from_numerators(n, cache));
      }
    }
  } catch (const std::exception& e) {
    run.error(n, e);
  }
  return run.finish();
}

VerificationReport verify_evaluation(unsigned long n_max_level, SequenceCache& cache) {
  if (n_max_level < 1) throw std::invalid_argument("verify_evaluation: level must be >= 1");
  if (n_max_level > 24) throw std::length_error("verify_evaluation: grid level too large");
  SuiteRun run("eval", 0, n_max_level);
  const unsigned long top = n_max_level;
  const unsigned long size = 1ul << top;
  // grid[i] = F(i / 2^top)
  std::vector<Rational> grid(size + 1);
  unsigned long level = 0;
  const Rational zero;
  try {
    grid[0] = fabius_eval(zero, zero, cache).value;
    grid[size] = fabius_eval(Rational(1), zero, cache).value;
    run.equal(0, "F(0)", Rational(0), grid[0]);
    run.equal(0, "F(1)", Rational(1), grid[size]);
    run.equal(0, "F(1) explicit", Rational(1), fabius_explicit(BigInt(1), 0, cache));

    for (level = 1; level <= top && !run.failed(); ++level) {
      const unsigned long stride = 1ul << (top - level);
      for (unsigned long a = 1; a < (1ul << level) && !run.failed(); a += 2) {
        const unsigned long i = a * stride;
        const Rational x = ldexp(Rational(static_cast<long>(a)), -static_cast<long>(level));
        grid[i] = fabius_eval(x, zero, cache).value;
        run.equal(level, "explicit = reduction at " + x.to_string(), fabius_explicit(BigInt(a), level, cache), grid[i]);
        const unsigned long mirror = size - i;
        if (mirror <= i) run.equal(level, "F(x) + F(1-x) at " + x.to_string(), Rational(1), grid[i] + grid[mirror]);
        run.holds(level, "F increasing at " + x.to_string(), grid[i - stride] < grid[i] && grid[i] < grid[i + stride]);
      }
      run.equal(level, "F(2^-n) closed form", fabius_at_inverse_power(level, cache), grid[stride]);
    }
  } catch (const std::exception& e) {
    run.error(level, e);
  }
  return run.finish();
}

VerificationReport verify_denominators(unsigned long n_max, SequenceCache& cache, const VerifyOptions& options) {
  if (n_max < 1) throw std::invalid_argument("verify_denominators: n_max must be >= 1");
  SuiteRun run("denominators", 1, n_max);
  unsigned long n = 1;
  try {
    for (; n <= n_max && !run.failed(); ++n) {
      const auto row = common_denominator(n, cache, {options.jobs, 0.05});
      run.holds(n, "D_n divides bound", row.divides_bound(), row.common.get_str() + " vs " + row.bound.get_str()) &&
          run.holds(n, "quotient >= 1", row.quotient >= 1, row.quotient.get_str()) &&
          run.holds(n, "explicit sample taken", row.sampled > 0);
    }
  } catch (const std::exception& e) {
    run.error(n, e);
  }
  return run.finish();
}

VerificationReport verify_conjecture(unsigned long n_max, SequenceCache& cache, const VerifyOptions& options) {
  if (n_max < 2) throw std::invalid_argument("verify_conjecture: n_max must be >= 2");
  SuiteRun run("conjecture", 1, n_max);
  try {
    const auto report = conjecture_scan(n_max, cache, {options.jobs, 0.05});
    for (const auto& row : report.rows) {
      if (row.scaled_pair_equal) run.holds(row.n, "A_{2n} = A_{2n+1}", *row.scaled_pair_equal);
      run.holds(row.n, "2(2n-1)! | K_n", row.k_divisible.value_or(false), row.k_value ? row.k_value->to_string() : "");
      run.holds(row.n, "H_n odd integer", row.h_odd_integer.value_or(false), row.h_value ? row.h_value->to_string() : "");
    }
  } catch (const std::exception& e) {
    run.error(0, e);
  }
  return run.finish();
}

const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{"reshetnikov", "valuation", "parity",    "cross",
                                                   "eval",        "denominators", "conjecture"};
  return names;
}

std::vector<VerificationReport> run_suites(std::string_view name, unsigned long n_max, SequenceCache& cache,
                                           const VerifyOptions& options) {
  const auto& names = suite_names();
  if (name != "all" && std::find(names.begin(), names.end(), name) == names.end()) {
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  }
  std::vector<VerificationReport> reports;
  auto selected = [&](std::string_view suite) { return name == "all" || name == suite; };
  const unsigned long eval_level = std::min(n_max, options.eval_level_cap);
  const unsigned long denominator_level = std::min(n_max, options.denominator_level_cap);

  if (selected("reshetnikov")) reports.push_back(verify_reshetnikov(n_max, cache));
  if (selected("valuation")) reports.push_back(verify_valuation(n_max, cache));
  if (selected("parity")) reports.push_back(verify_parity(n_max, cache));
  if (selected("cross")) reports.push_back(verify_cross_identities(n_max, cache));
  if (selected("eval")) reports.push_back(verify_evaluation(eval_level, cache));
  if (selected("denominators")) reports.push_back(verify_denominators(denominator_level, cache, options));
  if (selected("conjecture")) reports.push_back(verify_conjecture(std::max(denominator_level, 2ul), cache, options));
  return reports;
}

nlohmann::json to_json(const VerificationReport& report, bool include_timing) {
  nlohmann::json out;
  out["suite"] = report.suite;
  out["range"] = {report.n_min, report.n_max};
  out["outcome"] = report.passed() ? "pass" : "fail";
  if (report.first_failure) {
    const auto& f = *report.first_failure;
    out["first_failure"] = {{"n", f.n}, {"check", f.check}, {"expected", f.expected}, {"actual", f.actual}};
  } else {
    out["first_failure"] = nullptr;
  }
  if (include_timing) {
    out["elapsed_ms"] = std::chrono::duration<double, std::milli>(report.elapsed).count();
  }
  return out;
}

}  // namespace fabius
