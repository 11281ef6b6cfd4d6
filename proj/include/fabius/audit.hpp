#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fabius/sequences.hpp"

namespace fabius {

struct CheckFailure {
  unsigned long n;
  std::string check;
  std::string expected;
  std::string actual;
};

/// Outcome of one verification suite. The suite walks n upward and stops at
/// the first failing index, so first_failure names the minimal counterexample.
struct VerificationReport {
  std::string suite;
  unsigned long n_min = 0;
  unsigned long n_max = 0;
  std::optional<CheckFailure> first_failure;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const { return !first_failure.has_value(); }
};

struct VerifyOptions {
  unsigned jobs = 1;
  // Ranges of the grid-based suites are clamped to these levels.
  unsigned long eval_level_cap = 10;
  unsigned long denominator_level_cap = 14;
};

/// R_n is a positive odd integer, and the half-moment formula agrees with the
/// definition through the exactly evaluated F(2^-n), for 1 <= n <= n_max.
VerificationReport verify_reshetnikov(unsigned long n_max, SequenceCache& cache);

/// nu_2(F(2^-n)) = -C(n,2) - 1 - nu_2(n!) for 1 <= n <= n_max.
VerificationReport verify_valuation(unsigned long n_max, SequenceCache& cache);

/// F_n odd, nu_2(2 d_n) = 0 for n >= 1 (1 at n = 0), and the odd binomial
/// counts of row 2n+1, for 0 <= n <= n_max.
VerificationReport verify_parity(unsigned long n_max, SequenceCache& cache);

/// For 0 <= n <= n_max:
///   d_{2n+1} = (2n+1) c_n / 2
///   R_{2n+1} = F_n (4n+1)!! / (2n-1)!!
///   G_{2n+1} / (2n+1) = 2^n (n+1)! F_n prod_{k=0}^{n} (2^{2k+1} - 1)
///   d_{2n}, d_{2n+1} from the moments and from the Bernoulli recurrence
///   c_n from the Bernoulli recurrence
///   R_{2n} from the F_k expansion (n >= 1)
VerificationReport verify_cross_identities(unsigned long n_max, SequenceCache& cache);

/// On the dyadic grid of level n_max_level, walking levels upward: explicit
/// sum = reduction, F(x) + F(1-x) = 1, strict monotonicity against both
/// neighbours, and the closed forms of F(2^-n).
VerificationReport verify_evaluation(unsigned long n_max_level, SequenceCache& cache);

/// D_n divides the closed-form bound, the quotient by den(F(2^-n)) is integral
/// and the sampled explicit evaluations agree, for 1 <= n <= n_max.
VerificationReport verify_denominators(unsigned long n_max, SequenceCache& cache, const VerifyOptions& options = {});

/// Parts (a), (b), (c) of the D_n conjecture on levels 1..n_max.
VerificationReport verify_conjecture(unsigned long n_max, SequenceCache& cache, const VerifyOptions& options = {});

/// Suite names: reshetnikov, valuation, parity, cross, eval, denominators,
/// conjecture, and "all" for every one of them in that order.
const std::vector<std::string_view>& suite_names();

/// Runs the named suite (or all). Grid-based suites clamp n_max to the caps in
/// options. Throws std::invalid_argument for an unknown name.
std::vector<VerificationReport> run_suites(std::string_view name, unsigned long n_max, SequenceCache& cache,
                                           const VerifyOptions& options = {});

/// {"suite", "range": [n_min, n_max], "outcome", "first_failure"}; elapsed_ms
/// is added only when include_timing is set so that reports diff cleanly.
nlohmann::json to_json(const VerificationReport& report, bool include_timing = false);

}  // namespace fabius
