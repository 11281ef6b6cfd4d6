#pragma once

#include <cstddef>
#include <deque>
#include <shared_mutex>

#include "fabius/rational.hpp"

namespace fabius {

/// Memoized Bernoulli numbers with B_1 = -1/2, grown from
/// sum_{k=0}^{n} C(n+1, k) B_k = 0.
///
/// Growth is serialized; references returned by get() stay valid for the
/// lifetime of the cache, so readers may hold them while another thread grows
/// the table.
class BernoulliCache {
 public:
  BernoulliCache();

  const Rational& get(std::size_t n);
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::deque<Rational> values_;
};

/// Convenience wrapper over BernoulliCache::get.
const Rational& bernoulli(std::size_t n, BernoulliCache& cache);

}  // namespace fabius
