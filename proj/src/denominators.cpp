#include "fabius/denominators.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>

#include "fabius/errors.hpp"
#include "fabius/evaluate.hpp"
#include "fabius/number_theory.hpp"

namespace fabius {

namespace {

BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

// lcm of den(up((2k+1)/2^n)) for k in [first, last).
BigInt scan_range(unsigned long n, unsigned long first, unsigned long last, SequenceCache& cache) {
  BigInt acc = 1;
  const Rational zero;
  for (unsigned long k = first; k < last; ++k) {
    const Rational t = ldexp(Rational(static_cast<long>(2 * k + 1)), -static_cast<long>(n));
    acc = lcm(acc, up_eval(t, zero, cache).value.denominator());
  }
  return acc;
}

std::vector<unsigned long> sample_indices(unsigned long n, unsigned long count, double fraction) {
  const auto wanted = std::clamp<unsigned long>(
      static_cast<unsigned long>(std::ceil(fraction * static_cast<double>(count))), 1, count);
  std::mt19937_64 rng(0x5eed0000u + n);
  std::vector<unsigned long> picks;
  picks.reserve(wanted);
  for (unsigned long i = 0; i < wanted; ++i) picks.push_back(rng() % count);
  std::sort(picks.begin(), picks.end());
  picks.erase(std::unique(picks.begin(), picks.end()), picks.end());
  return picks;
}

}  // namespace

bool DenominatorRow::divides_bound() const { return mpz_divisible_p(bound.get_mpz_t(), common.get_mpz_t()) != 0; }

BigInt divisor_bound(unsigned long n) {
  if (n == 0) throw std::invalid_argument("divisor_bound: n must be >= 1");
  const unsigned long half = n / 2;
  return factorial(n) * pow2(static_cast<unsigned long>(choose2(static_cast<long>(n) + 1))) *
         double_factorial(static_cast<long>(2 * half + 1)) * mersenne_product(half, 2);
}

DenominatorRow common_denominator(unsigned long n, SequenceCache& cache, const ScanOptions& options) {
  if (n == 0) throw std::invalid_argument("common_denominator: level must be >= 1");
  if (n > 62) throw std::length_error("common_denominator: level too large to scan");

  // Grow everything the workers read so they only take shared locks.
  cache.half_moment(n);
  cache.moment(n / 2);

  const unsigned long count = 1ul << (n - 1);  // odd numerators 1, 3, ..., 2^n - 1
  const unsigned long jobs = std::clamp<unsigned long>(options.jobs, 1, count);
  std::vector<BigInt> partial(jobs, BigInt(1));
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned long j = 0; j < jobs; ++j) {
      workers.emplace_back([&, j] {
        try {
          partial[j] = scan_range(n, count * j / jobs, count * (j + 1) / jobs, cache);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  DenominatorRow row{n, 1, Rational(), divisor_bound(n), 0, 0};
  for (const auto& p : partial) row.common = lcm(row.common, p);

  const Rational zero;
  for (unsigned long k : sample_indices(n, count, options.sample_fraction)) {
    const BigInt a = 2 * k + 1;
    const Rational reduced = up_eval(ldexp(Rational(a), -static_cast<long>(n)), zero, cache).value;
    const Rational explicit_value = fabius_explicit(pow2(n) - a, n, cache);
    if (reduced != explicit_value) {
      throw IdentityViolation("level " + std::to_string(n) + ", numerator " + a.get_str() +
                              ": reduction " + reduced.to_string() + " vs explicit " + explicit_value.to_string());
    }
    ++row.sampled;
  }

  row.scaled = ldexp(Rational(row.common), -choose2(static_cast<long>(n)));
  const BigInt value_den = fabius_at_inverse_power(n, cache).denominator();
  if (!mpz_divisible_p(row.common.get_mpz_t(), value_den.get_mpz_t())) {
    throw IdentityViolation("D_" + std::to_string(n) + " = " + row.common.get_str() +
                            " is not a multiple of den(F(2^-n)) = " + value_den.get_str());
  }
  mpz_divexact(row.quotient.get_mpz_t(), row.common.get_mpz_t(), value_den.get_mpz_t());
  return row;
}

std::vector<DenominatorRow> denominator_table(unsigned long n_max, SequenceCache& cache, const ScanOptions& options) {
  std::vector<DenominatorRow> rows;
  rows.reserve(n_max);
  for (unsigned long n = 1; n <= n_max; ++n) rows.push_back(common_denominator(n, cache, options));
  return rows;
}

std::vector<BigInt> denominator_quotients(unsigned long n_max, SequenceCache& cache, const ScanOptions& options) {
  std::vector<BigInt> out;
  for (const auto& row : denominator_table(n_max, cache, options)) out.push_back(row.quotient);
  return out;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::untested: return "untested";
  }
  return "unknown";
}

namespace {

void fold(Verdict& verdict, bool ok) {
  if (!ok) {
    verdict = Verdict::fail;
  } else if (verdict == Verdict::untested) {
    verdict = Verdict::pass;
  }
}

}  // namespace

ConjectureReport conjecture_scan(std::span<const DenominatorRow> rows) {
  ConjectureReport report;
  report.levels = rows.size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].n != i + 1) throw std::invalid_argument("conjecture_scan: rows must cover levels 1, 2, ... in order");
  }
  auto scaled = [&](unsigned long level) -> const Rational& { return rows[level - 1].scaled; };

  for (unsigned long n = 1; 2 * n - 1 <= report.levels; ++n) {
    ConjectureRow row{n, {}, {}, {}, {}, {}};
    if (2 * n + 1 <= report.levels) {
      row.scaled_pair_equal = scaled(2 * n) == scaled(2 * n + 1);
      fold(report.part_a, *row.scaled_pair_equal);
    }
    const Rational& k_value = scaled(2 * n - 1);
    const BigInt divisor = 2 * factorial(2 * n - 1);
    row.k_value = k_value;
    row.k_divisible = k_value.is_integer() && mpz_divisible_p(k_value.mpq().get_num_mpz_t(), divisor.get_mpz_t());
    fold(report.part_b, *row.k_divisible);

    const Rational h_value = k_value / Rational(divisor);
    row.h_value = h_value;
    row.h_odd_integer = h_value.is_integer() && mpz_odd_p(h_value.mpq().get_num_mpz_t());
    fold(report.part_c, *row.h_odd_integer);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConjectureReport conjecture_scan(unsigned long n_max, SequenceCache& cache, const ScanOptions& options) {
  if (n_max < 2) throw std::invalid_argument("conjecture_scan: n_max must be >= 2");
  const auto rows = denominator_table(n_max, cache, options);
  return conjecture_scan(rows);
}

}  // namespace fabius
