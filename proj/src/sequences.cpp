#include "fabius/sequences.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#include "fabius/errors.hpp"
#include "fabius/number_theory.hpp"

namespace fabius {

namespace {

template <class T, class Grow>
const T& lookup_or_grow(std::shared_mutex& mutex, const std::deque<T>& store, std::size_t slot,
                        Grow&& grow) {
  {
    std::shared_lock lock(mutex);
    if (slot < store.size()) return store[slot];
  }
  std::unique_lock lock(mutex);
  grow();
  return store[slot];
}

BigInt to_integer_or_throw(const Rational& value, const char* what, std::size_t n) {
  if (!value.is_integer()) {
    throw IdentityViolation(std::string(what) + "_" + std::to_string(n) + " is not an integer: " +
                            value.to_string());
  }
  return value.numerator();
}

Rational from_long(std::size_t v) { return Rational(static_cast<long>(v)); }

}  // namespace

SequenceCache::SequenceCache(std::size_t index_limit) : index_limit_(index_limit) {}

std::size_t SequenceCache::default_index_limit() {
  if (const char* env = std::getenv("FABIUS_CACHE_LIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return kDefaultIndexLimit;
}

void SequenceCache::check_limit(std::size_t n) const {
  if (n > index_limit_) {
    throw CacheLimitExceeded("sequence index " + std::to_string(n) + " exceeds cache limit " +
                             std::to_string(index_limit_));
  }
}

const Rational& SequenceCache::moment(std::size_t n) {
  check_limit(n);
  return lookup_or_grow(mutex_, c_, n, [&] { grow_moments(n); });
}

const Rational& SequenceCache::half_moment(std::size_t n) {
  check_limit(n);
  return lookup_or_grow(mutex_, d_, n, [&] { grow_half_moments(n); });
}

const BigInt& SequenceCache::moment_numerator(std::size_t n) {
  check_limit(n);
  return lookup_or_grow(mutex_, f_, n, [&] { grow_moment_numerators(n); });
}

const BigInt& SequenceCache::half_moment_numerator(std::size_t n) {
  check_limit(n);
  return lookup_or_grow(mutex_, g_, n, [&] { grow_half_moment_numerators(n); });
}

const BigInt& SequenceCache::reshetnikov(std::size_t n) {
  if (n == 0) throw std::invalid_argument("reshetnikov: index must be >= 1");
  check_limit(n);
  return lookup_or_grow(mutex_, r_, n - 1, [&] { grow_reshetnikov(n); });
}

const SequenceCache::DerivativeRow& SequenceCache::derivative_row(std::size_t n) {
  check_limit(n);
  return lookup_or_grow(mutex_, rows_, n, [&] { grow_derivative_rows(n); });
}

void SequenceCache::grow_derivative_rows(std::size_t n) {
  grow_half_moments(n);
  while (rows_.size() <= n) {
    const std::size_t m = rows_.size();
    std::vector<Rational> coefficients;
    coefficients.reserve(m + 1);
    DerivativeRow row{{}, 1};
    for (std::size_t k = 0; k <= m; ++k) {
      const long j = static_cast<long>(m - k);
      coefficients.push_back(ldexp(d_[m - k], choose2(static_cast<long>(k) + 1) - choose2(j)) /
                             Rational(BigInt(factorial(m - k) * factorial(k))));
      mpz_lcm(row.denominator.get_mpz_t(), row.denominator.get_mpz_t(),
              coefficients.back().mpq().get_den_mpz_t());
    }
    row.numerators.reserve(m + 1);
    for (const auto& coefficient : coefficients) {
      BigInt scaled;
      mpz_divexact(scaled.get_mpz_t(), row.denominator.get_mpz_t(), coefficient.mpq().get_den_mpz_t());
      row.numerators.push_back(scaled * coefficient.numerator());
    }
    rows_.push_back(std::move(row));
  }
}

void SequenceCache::grow_moments(std::size_t n) {
  while (c_.size() <= n) {
    const std::size_t m = c_.size();
    if (m == 0) {
      c_.emplace_back(1);
      continue;
    }
    Rational sum;
    for (std::size_t k = 0; k < m; ++k) sum += Rational(binomial(2 * m + 1, 2 * k)) * c_[k];
    const BigInt scale = BigInt(static_cast<unsigned long>(2 * m + 1)) * (pow2(2 * m) - 1);
    c_.push_back(sum / Rational(scale));
  }
}

void SequenceCache::grow_half_moments(std::size_t n) {
  while (d_.size() <= n) {
    const std::size_t m = d_.size();
    if (m == 0) {
      d_.emplace_back(1);
      continue;
    }
    Rational sum;
    for (std::size_t k = 0; k < m; ++k) sum += Rational(binomial(m + 1, k)) * d_[k];
    const BigInt scale = BigInt(static_cast<unsigned long>(m + 1)) * (pow2(m) - 1);
    d_.push_back(sum / Rational(scale));
  }
}

void SequenceCache::grow_moment_numerators(std::size_t n) {
  grow_moments(n);
  while (f_.size() <= n) {
    const std::size_t m = f_.size();
    BigInt value;
    if (m == 0) {
      value = 1;
    } else {
      // F_m = sum_{k<m} F_k C(2m+1,2k) (2m-1)!!/(2k+1)!! prod_{v=k+1}^{m-1} (4^v-1)
      BigInt odd_ratio = 1;   // (2m-1)!!/(2k+1)!!
      BigInt mersenne = 1;    // prod_{v=k+1}^{m-1} (4^v-1)
      for (std::size_t k = m; k-- > 0;) {
        if (k + 1 < m) {
          odd_ratio *= static_cast<unsigned long>(2 * k + 3);
          mersenne *= pow2(2 * (k + 1)) - 1;
        }
        value += f_[k] * binomial(2 * m + 1, 2 * k) * odd_ratio * mersenne;
      }
    }
    const Rational product =
        c_[m] * Rational(double_factorial(static_cast<long>(2 * m + 1)) * mersenne_product(m, 2));
    if (product != Rational(value)) {
      throw IdentityViolation("F_" + std::to_string(m) + ": recurrence gives " + value.get_str() +
                              ", product formula gives " + product.to_string());
    }
    f_.push_back(value);
  }
}

void SequenceCache::grow_half_moment_numerators(std::size_t n) {
  grow_half_moments(n);
  while (g_.size() <= n) {
    const std::size_t m = g_.size();
    const Rational product = d_[m] * Rational(factorial(m + 1) * mersenne_product(m, 1));
    const BigInt value = to_integer_or_throw(product, "G", m);

    if (m > 0) {
      // G_m = sum_{k<m} G_k C(m+1,k) m!/(k+1)! prod_{j=k+1}^{m-1} (2^j-1)
      BigInt recurrence;
      BigInt falling = 1;  // m!/(k+1)!
      BigInt mersenne = 1;
      for (std::size_t k = m; k-- > 0;) {
        if (k + 1 < m) {
          falling *= static_cast<unsigned long>(k + 2);
          mersenne *= pow2(k + 1) - 1;
        }
        recurrence += g_[k] * binomial(m + 1, k) * falling * mersenne;
      }
      if (recurrence != value) {
        throw IdentityViolation("G_" + std::to_string(m) + ": recurrence gives " + recurrence.get_str() +
                                ", product formula gives " + value.get_str());
      }
    }
    g_.push_back(value);
  }
}

void SequenceCache::grow_reshetnikov(std::size_t n) {
  grow_half_moments(n);
  grow_moments(n / 2);
  while (r_.size() < n) {
    const std::size_t m = r_.size() + 1;
    const BigInt mersenne = mersenne_product(m / 2, 2);
    const Rational via_d =
        Rational(2) * d_[m] * Rational(double_factorial(static_cast<long>(2 * m - 1)) * mersenne);
    const BigInt value = to_integer_or_throw(via_d, "R", m);

    // Definitional route: F(2^-m) from the moments, then scale.
    Rational sum;
    for (std::size_t k = 0; 2 * k <= m; ++k) sum += Rational(binomial(m, 2 * k)) * c_[k];
    const Rational inverse_power_value =
        ldexp(sum, -static_cast<long>(m) - choose2(static_cast<long>(m))) / Rational(factorial(m));
    const Rational via_definition =
        ldexp(inverse_power_value * Rational(factorial(2 * m) * mersenne), choose2(static_cast<long>(m) - 1));
    if (via_definition != Rational(value)) {
      throw IdentityViolation("R_" + std::to_string(m) + ": half-moment route gives " + value.get_str() +
                              ", definition gives " + via_definition.to_string());
    }
    r_.push_back(value);
  }
}

std::vector<Rational> moments(std::size_t n_max, SequenceCache& cache) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  cache.moment(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(cache.moment(n));
  return out;
}

std::vector<BigInt> moment_numerators(std::size_t n_max, SequenceCache& cache) {
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  cache.moment_numerator(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(cache.moment_numerator(n));
  return out;
}

std::vector<Rational> half_moments(std::size_t n_max, SequenceCache& cache) {
  std::vector<Rational> out;
  out.reserve(n_max + 1);
  cache.half_moment(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(cache.half_moment(n));
  return out;
}

std::vector<BigInt> half_moment_numerators(std::size_t n_max, SequenceCache& cache) {
  std::vector<BigInt> out;
  out.reserve(n_max + 1);
  cache.half_moment_numerator(n_max);
  for (std::size_t n = 0; n <= n_max; ++n) out.push_back(cache.half_moment_numerator(n));
  return out;
}

std::vector<BigInt> reshetnikov_numbers(std::size_t n_max, SequenceCache& cache) {
  if (n_max == 0) throw std::invalid_argument("reshetnikov_numbers: n_max must be >= 1");
  std::vector<BigInt> out;
  out.reserve(n_max);
  cache.reshetnikov(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(cache.reshetnikov(n));
  return out;
}

Rational half_moment_from_moments(std::size_t n, SequenceCache& cache) {
  Rational sum;
  for (std::size_t k = 0; 2 * k <= n; ++k) sum += Rational(binomial(n, 2 * k)) * cache.moment(k);
  return ldexp(sum, -static_cast<long>(n));
}

std::vector<Rational> moments_via_bernoulli(std::size_t n_max, BernoulliCache& bernoulli) {
  std::vector<Rational> c;
  c.reserve(n_max + 1);
  c.emplace_back(1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    Rational sum;
    for (std::size_t k = 1; k <= n; ++k) {
      const BigInt weight = pow2(2 * (n - k)) * (pow2(2 * k) - 2) * binomial(2 * n, 2 * k);
      sum += Rational(weight) * bernoulli.get(2 * k) * c[n - k];
    }
    c.push_back(sum / Rational(BigInt(pow2(2 * n) - 1)));
  }
  return c;
}

std::vector<Rational> half_moments_via_bernoulli(std::size_t n_max, BernoulliCache& bernoulli) {
  std::vector<Rational> d;
  d.reserve(n_max + 1);
  d.emplace_back(1);
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Rational mersenne(BigInt(pow2(n) - 1));
    // n 2^{n-2} d_{n-1}; the power is 1/2 at n = 1.
    Rational value = ldexp(from_long(n) * d[n - 1], static_cast<long>(n) - 2) / mersenne;
    Rational sum;
    for (std::size_t k = 1; 2 * k <= n; ++k) {
      sum += Rational(BigInt(binomial(n, 2 * k) * pow2(n - 2 * k))) * bernoulli.get(2 * k) * d[n - 2 * k];
    }
    value -= sum / mersenne;
    d.push_back(value);
  }
  return d;
}

Rational reshetnikov_even_from_numerators(std::size_t n, SequenceCache& cache) {
  if (n == 0) throw std::invalid_argument("reshetnikov_even_from_numerators: n must be >= 1");
  const BigInt top = double_factorial(static_cast<long>(4 * n - 1));
  Rational sum;
  for (std::size_t k = 0; k <= n; ++k) {
    BigInt mersenne = 1;
    for (std::size_t l = k + 1; l <= n; ++l) mersenne *= pow2(2 * l) - 1;
    BigInt odd_ratio;
    mpz_divexact(odd_ratio.get_mpz_t(), top.get_mpz_t(),
                 double_factorial(static_cast<long>(2 * k + 1)).get_mpz_t());
    sum += Rational(BigInt(2 * cache.moment_numerator(k) * binomial(2 * n, 2 * k) * odd_ratio * mersenne));
  }
  return ldexp(sum, -2 * static_cast<long>(n));
}

}  // namespace fabius
