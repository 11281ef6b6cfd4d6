#include "fabius/bernoulli.hpp"

#include <mutex>

#include "fabius/number_theory.hpp"

namespace fabius {

BernoulliCache::BernoulliCache() { values_.emplace_back(1); }

const Rational& BernoulliCache::get(std::size_t n) {
  {
    std::shared_lock lock(mutex_);
    if (n < values_.size()) return values_[n];
  }
  std::unique_lock lock(mutex_);
  while (values_.size() <= n) {
    const std::size_t m = values_.size();
    Rational sum;
    for (std::size_t k = 0; k < m; ++k) {
      if (values_[k].is_zero()) continue;
      sum += Rational(binomial(m + 1, k)) * values_[k];
    }
    values_.push_back(-sum / Rational(static_cast<long>(m + 1)));
  }
  return values_[n];
}

std::size_t BernoulliCache::size() const {
  std::shared_lock lock(mutex_);
  return values_.size();
}

const Rational& bernoulli(std::size_t n, BernoulliCache& cache) { return cache.get(n); }

}  // namespace fabius
