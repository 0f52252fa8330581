#pragma once

// Level sets N_r = {x : sigma(x) >= r}, their sizes n_r, the critical index
// r0 of an interval configuration, Pollard's inequality, the k = 2 equality
// classifier and the extremality conditions for s(a0, ..., ak).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "addcount/counting.hpp"
#include "addcount/zp.hpp"

namespace addcount {

/// n[r] = #{x : sigma(x) >= r} for r = 0 .. r_max, where r_max is the first r
/// with n_r = 0. n[0] = p and n is nonincreasing.
struct ThresholdProfile {
  std::vector<std::uint64_t> n;
  std::int64_t r_max = 0;

  std::uint64_t at(std::int64_t r) const {
    return r < static_cast<std::int64_t>(n.size()) ? n[static_cast<std::size_t>(r)] : 0;
  }
};

inline constexpr std::int64_t kMaxProfileLength = 10'000'000;

// Throws SizeLimitError when max sigma exceeds kMaxProfileLength.
ThresholdProfile threshold_profile(const CountVector& sigma);
ThresholdProfile threshold_profile(const PrimeContext& ctx, std::span<const Subset> sets);

// The level set N_r as a subset.
Subset level_set(const CountVector& sigma, std::int64_t r);

// sum_{i=1}^{r} n_i, computed as sum_x min(sigma(x), r).
BigInt partial_threshold_sum(const CountVector& sigma, std::int64_t r);

// sizes = (a0, a1, ..., ak). Returns the unique r0 >= 0 with
// n_r([a1],...,[ak]) > p - a0 exactly for r <= r0. Rejects a0 in {0, p}.
std::int64_t critical_r0(const PrimeContext& ctx, std::span<const int> sizes);

struct PollardSums {
  BigInt lhs;  // sum_{i<=r} n_i(A1, ..., Ak)
  BigInt rhs;  // sum_{i<=r} n_i([a1], ..., [ak])
};

PollardSums pollard_lhs_rhs(const PrimeContext& ctx, std::span<const Subset> sets, std::int64_t r);

/// Which equality conditions hold for a k = 2 pair at the critical index.
/// Case bits follow the classical list (1..4) plus the Vosper complement
/// case: r0 = 1, a1 + a2 = p and A2 = Z_p \ (g - A1).
struct EqualityCase {
  enum class Tag { R0EqualsA1, LargeSum, ReflectionPair, CommonDifferenceAps, VosperComplement, None };

  Tag tag = Tag::None;
  unsigned mask = 0;              // bit i set iff case Tag(i) holds
  std::optional<int> g;           // A2 = g - A1 (reflection pair)
  std::optional<int> d;           // common difference (smallest)
  std::optional<int> vosper_g;    // A2 = Z_p \ (g - A1)

  bool holds(Tag t) const { return (mask >> static_cast<unsigned>(t)) & 1u; }
};

std::string to_string(EqualityCase::Tag tag);

// Requires 1 <= r0 <= |A1| <= |A2| < p; throws std::invalid_argument otherwise.
EqualityCase classify_equality_k2(const PrimeContext& ctx, Subset A1, Subset A2, std::int64_t r0);

struct ExtremalityConditions {
  std::int64_t r0 = 0;
  bool misses_next_level = false;  // A0 n N_{r0+1} = empty
  bool covers_group = false;       // A0 u N_{r0} = Z_p
  bool pollard_equality = false;   // equality in Pollard's sum at r0

  bool all() const { return misses_next_level && covers_group && pollard_equality; }
};

/// Precomputes sigma(A1..Ak), the interval profile and, for every a0, the
/// level sets N_{r0}, N_{r0+1} and Pollard equality, so that each A0 costs
/// two word operations.
class ExtremalityChecker {
 public:
  // All sizes |Ai| must lie in [1, p-1].
  ExtremalityChecker(const PrimeContext& ctx, std::span<const Subset> rest);

  const CountVector& sigma() const { return sigma_; }
  // Requires 1 <= |A0| <= p-1.
  ExtremalityConditions check(Subset A0) const;

 private:
  struct Level {
    std::int64_t r0 = 0;
    Word next = 0;   // N_{r0+1}
    Word at = 0;     // N_{r0}
    bool equality = false;
  };
  Word full_ = 0;
  CountVector sigma_;
  std::vector<Level> by_size_;  // indexed by a0
};

// All sizes must lie in [1, p-1].
ExtremalityConditions check_extremality_conditions(const PrimeContext& ctx, Subset A0,
                                                   std::span<const Subset> rest);

// sizes = (a0, a1, ..., ak) with 0 < a0 < p. Returns t such that [a0]+t meets
// every N_r([a1],...,[ak]) in exactly max(0, n_r + a0 - p) points.
int optimal_interval_translate(const PrimeContext& ctx, std::span<const int> sizes);

}  // namespace addcount
