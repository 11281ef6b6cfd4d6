#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fabius/rational.hpp"
#include "fabius/sequences.hpp"

namespace fabius {

struct DenominatorRow {
  unsigned long n;
  BigInt common;      // D_n, lcm of the denominators of up(a/2^n), a odd
  Rational scaled;    // A_n = D_n / 2^{C(n,2)}
  BigInt bound;       // a multiple of D_n that is known in closed form
  BigInt quotient;    // D_n / den(F(2^-n))
  std::size_t sampled = 0;  // points re-evaluated with the explicit sum

  bool divides_bound() const;
};

struct ScanOptions {
  unsigned jobs = 1;
  // Fraction of the odd numerators re-checked with the explicit sum.
  double sample_fraction = 0.05;
};

/// n! 2^{C(n+1,2)} (2 floor(n/2) + 1)!! prod_{k=1}^{floor(n/2)} (4^k - 1).
/// Throws std::invalid_argument for n = 0.
BigInt divisor_bound(unsigned long n);

/// Scans up((2k+1)/2^n) over all odd numerators in (0, 2^n] with the reduction
/// evaluator and folds the denominators into D_n. A deterministic sample is
/// re-evaluated with the explicit sum; disagreement throws IdentityViolation,
/// as does a fractional quotient. Throws std::invalid_argument for n = 0.
DenominatorRow common_denominator(unsigned long n, SequenceCache& cache, const ScanOptions& options = {});

/// Rows for levels 1..n_max.
std::vector<DenominatorRow> denominator_table(unsigned long n_max, SequenceCache& cache,
                                              const ScanOptions& options = {});

/// D_n / den(d_n / (2^{C(n,2)} n!)) for n = 1..n_max (element i is level i+1).
std::vector<BigInt> denominator_quotients(unsigned long n_max, SequenceCache& cache,
                                          const ScanOptions& options = {});

enum class Verdict { pass, fail, untested };

std::string_view to_string(Verdict v);

struct ConjectureRow {
  unsigned long n;
  std::optional<bool> scaled_pair_equal;  // A_{2n} == A_{2n+1}, when both levels exist
  std::optional<Rational> k_value;        // K_n = A_{2n-1}
  std::optional<bool> k_divisible;        // 2 (2n-1)! | K_n
  std::optional<Rational> h_value;        // H_n = K_n / (2 (2n-1)!)
  std::optional<bool> h_odd_integer;
};

struct ConjectureReport {
  unsigned long levels = 0;  // rows were derived from D_1..D_levels
  std::vector<ConjectureRow> rows;
  Verdict part_a = Verdict::untested;
  Verdict part_b = Verdict::untested;
  Verdict part_c = Verdict::untested;
};

/// Evaluates the three parts of the conjecture on D-rows for levels 1..m
/// (rows must be consecutive from level 1). Nothing is asserted beyond the
/// given levels.
ConjectureReport conjecture_scan(std::span<const DenominatorRow> rows);
ConjectureReport conjecture_scan(unsigned long n_max, SequenceCache& cache, const ScanOptions& options = {});

}  // namespace fabius
