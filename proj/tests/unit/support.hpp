#pragma once

#include <bit>
#include <random>

#include "addcount/zp.hpp"
#include "oracle/brute.hpp"

namespace testing_support {

inline addcount::Subset to_subset(const addcount::PrimeContext& ctx, const oracle::Set& s) {
  std::vector<std::int64_t> xs(s.begin(), s.end());
  return addcount::make_subset(ctx, xs);
}

inline oracle::Set to_set(addcount::Subset A) { return A.residues(); }

inline addcount::Subset random_subset(std::mt19937_64& rng, const addcount::PrimeContext& ctx, int a) {
  return to_subset(ctx, oracle::random_set(rng, ctx.p(), a));
}

inline addcount::AffineMap random_map(std::mt19937_64& rng, int p) {
  return {oracle::uniform(rng, 1, p - 1), oracle::uniform(rng, 0, p - 1)};
}

inline constexpr int kSmallPrimes[] = {3, 5, 7, 11, 13};

}  // namespace testing_support
