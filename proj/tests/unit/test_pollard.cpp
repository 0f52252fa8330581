#include <gtest/gtest.h>

#include "addcount/errors.hpp"
#include "addcount/pollard.hpp"
#include "support.hpp"

using namespace addcount;
using testing_support::random_subset;
using testing_support::to_subset;
using Tag = EqualityCase::Tag;

namespace {

std::vector<Subset> intervals(const PrimeContext& ctx, std::span<const int> sizes) {
  std::vector<Subset> out;
  for (int a : sizes) out.push_back(interval(ctx, 0, a));
  return out;
}

}  // namespace

// ============================================================================
// Threshold profiles
// ============================================================================

TEST(ThresholdProfile, IntervalPair) {
  const PrimeContext ctx(11);
  const std::vector<int> sizes = {5, 6};
  const auto prof = threshold_profile(ctx, intervals(ctx, sizes));
  EXPECT_EQ(prof.n, (std::vector<std::uint64_t>{11, 10, 8, 6, 4, 2, 0}));
  EXPECT_EQ(prof.r_max, 6);
  EXPECT_EQ(prof.at(40), 0u);
}

TEST(ThresholdProfile, Invariants) {
  std::mt19937_64 rng(20);
  for (int p : {5, 7, 11, 13}) {
    const PrimeContext ctx(p);
    for (int i = 0; i < 50; ++i) {
      const int k = oracle::uniform(rng, 1, 4);
      std::vector<Subset> sets;
      BigInt product = 1;
      for (int j = 0; j < k; ++j) {
        sets.push_back(random_subset(rng, ctx, oracle::uniform(rng, 1, p - 1)));
        product *= sets.back().size();
      }
      const CountVector sg = sigma_vector(ctx, sets);
      const auto prof = threshold_profile(sg);
      EXPECT_EQ(prof.n[0], std::uint64_t(p));
      EXPECT_EQ(prof.at(prof.r_max), 0u);
      BigInt sum = 0;
      for (std::size_t r = 1; r < prof.n.size(); ++r) {
        EXPECT_LE(prof.n[r], prof.n[r - 1]);
        EXPECT_EQ(prof.n[r], std::uint64_t(level_set(sg, std::int64_t(r)).size()));
        sum += prof.n[r];
      }
      EXPECT_EQ(sum, product);
      EXPECT_EQ(partial_threshold_sum(sg, prof.r_max), product);
    }
  }
}

TEST(ThresholdProfile, Guard) {
  const PrimeContext ctx(5);
  CountVector big(5);
  big[0] = BigInt(kMaxProfileLength) + 1;
  EXPECT_THROW(threshold_profile(big), SizeLimitError);
}

// ============================================================================
// Critical index
// ============================================================================

TEST(CriticalR0, Examples) {
  const PrimeContext c11(11);
  EXPECT_EQ(critical_r0(c11, std::vector<int>{3, 7, 7}), 3);
  const PrimeContext c13(13);
  EXPECT_EQ(critical_r0(c13, std::vector<int>{10, 3, 8}), 3);
}

TEST(CriticalR0, Definition) {
  for (int p : {5, 7, 11}) {
    const PrimeContext ctx(p);
    for (int a0 = 1; a0 < p; ++a0) {
      for (int a1 = 1; a1 < p; ++a1) {
        for (int a2 = a1; a2 < p; ++a2) {
          const std::vector<int> sizes = {a0, a1, a2};
          const std::int64_t r0 = critical_r0(ctx, sizes);
          const auto prof = threshold_profile(ctx, intervals(ctx, std::span(sizes).subspan(1)));
          EXPECT_GT(prof.at(r0), std::uint64_t(p - a0));
          EXPECT_LE(prof.at(r0 + 1), std::uint64_t(p - a0));
          EXPECT_LE(r0, a1);
          EXPECT_EQ(r0 == 0, a1 + a2 - 1 <= p - a0);  // Cauchy-Davenport
        }
      }
    }
  }
}

TEST(CriticalR0, RejectsDegenerateA0) {
  const PrimeContext ctx(7);
  EXPECT_THROW(critical_r0(ctx, std::vector<int>{0, 3, 3}), std::invalid_argument);
  EXPECT_THROW(critical_r0(ctx, std::vector<int>{7, 3, 3}), std::invalid_argument);
  EXPECT_THROW(critical_r0(ctx, std::vector<int>{3}), std::invalid_argument);
}

// ============================================================================
// Pollard's inequality
// ============================================================================

TEST(Pollard, RandomInstances) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const int p = testing_support::kSmallPrimes[oracle::uniform(rng, 1, 4)];
    const PrimeContext ctx(p);
    const int k = oracle::uniform(rng, 1, 4);
    std::vector<Subset> sets;
    int min_a = p;
    for (int j = 0; j < k; ++j) {
      sets.push_back(random_subset(rng, ctx, oracle::uniform(rng, 1, p)));
      min_a = std::min(min_a, sets.back().size());
    }
    const int r = oracle::uniform(rng, 1, min_a);
    const auto sums = pollard_lhs_rhs(ctx, sets, r);
    EXPECT_GE(sums.lhs, sums.rhs) << "p=" << p << " k=" << k << " r=" << r;
  }
}

TEST(Pollard, CauchyDavenport) {
  std::mt19937_64 rng(22);
  const PrimeContext ctx(13);
  for (int i = 0; i < 300; ++i) {
    const auto A = random_subset(rng, ctx, oracle::uniform(rng, 1, 12));
    const auto B = random_subset(rng, ctx, oracle::uniform(rng, 1, 12));
    const std::vector<Subset> pair = {A, B};
    const auto sums = pollard_lhs_rhs(ctx, pair, 1);
    EXPECT_EQ(sums.lhs, level_set(sigma_vector(ctx, pair), 1).size());
    EXPECT_EQ(sums.rhs, std::min(13, A.size() + B.size() - 1));
  }
}

TEST(Pollard, RejectsNonPositiveR) {
  const PrimeContext ctx(5);
  const std::vector<Subset> sets = {interval(ctx, 0, 2)};
  EXPECT_THROW(pollard_lhs_rhs(ctx, sets, 0), std::invalid_argument);
}

// ============================================================================
// Equality classifier (k = 2)
// ============================================================================

TEST(Classifier, CaseOne) {
  const PrimeContext ctx(13);
  const auto e = classify_equality_k2(ctx, make_subset(ctx, {0, 1, 3}), make_subset(ctx, {0, 2, 3, 5, 6, 7, 9, 10}), 3);
  EXPECT_EQ(e.tag, Tag::R0EqualsA1);
}

TEST(Classifier, LargeSum) {
  const PrimeContext ctx(11);
  const Subset A = make_subset(ctx, {0, 1, 2, 3, 4, 5, 7});
  const auto e = classify_equality_k2(ctx, A, A, 3);
  EXPECT_EQ(e.tag, Tag::LargeSum);
  EXPECT_FALSE(e.holds(Tag::CommonDifferenceAps));
}

TEST(Classifier, ReflectionPair) {
  const PrimeContext ctx(11);
  const Subset A1 = make_subset(ctx, {0, 1, 4});
  const Subset A2 = translate(ctx, dilate(ctx, A1, -1), 5);
  const auto e = classify_equality_k2(ctx, A1, A2, 2);
  EXPECT_TRUE(e.holds(Tag::ReflectionPair));
  EXPECT_EQ(e.g, 5);
}

TEST(Classifier, CommonDifference) {
  const PrimeContext ctx(13);
  const auto e = classify_equality_k2(ctx, make_subset(ctx, {0, 3, 6}), make_subset(ctx, {1, 4, 7, 10}), 2);
  EXPECT_EQ(e.tag, Tag::CommonDifferenceAps);
  EXPECT_TRUE(e.d == 3 || e.d == 10);
}

TEST(Classifier, VosperComplement) {
  const PrimeContext ctx(7);
  const Subset A1 = make_subset(ctx, {0, 1, 3});
  const Subset A2 = make_subset(ctx, {1, 2, 3, 5});
  for (int a0 : {2, 3}) {
    const std::vector<int> sizes = {a0, 3, 4};
    ASSERT_EQ(critical_r0(ctx, sizes), 1);
    const std::vector<Subset> pair = {A1, A2};
    const auto sums = pollard_lhs_rhs(ctx, pair, 1);
    EXPECT_EQ(sums.lhs, sums.rhs);
  }
  const auto e = classify_equality_k2(ctx, A1, A2, 1);
  EXPECT_EQ(e.tag, Tag::VosperComplement);
  EXPECT_EQ(e.vosper_g, 0);
}

TEST(Classifier, RejectsOutOfRange) {
  const PrimeContext ctx(7);
  EXPECT_THROW(classify_equality_k2(ctx, interval(ctx, 0, 3), interval(ctx, 0, 4), 0), std::invalid_argument);
  EXPECT_THROW(classify_equality_k2(ctx, interval(ctx, 0, 4), interval(ctx, 0, 3), 1), std::invalid_argument);
  EXPECT_THROW(classify_equality_k2(ctx, interval(ctx, 0, 3), interval(ctx, 0, 7), 1), std::invalid_argument);
}

TEST(Classifier, ExhaustiveFive) {
  // Equality in Pollard's sum at r0 iff some case applies, over every pair at p = 5.
  const PrimeContext ctx(5);
  for (int a1 = 1; a1 < 5; ++a1) {
    for (int a2 = a1; a2 < 5; ++a2) {
      for (int a0 = 1; a0 < 5; ++a0) {
        const std::vector<int> sizes = {a0, a1, a2};
        const std::int64_t r0 = critical_r0(ctx, sizes);
        if (r0 < 1) continue;
        for_each_subset(ctx, a1, [&](Subset A1) {
          for_each_subset(ctx, a2, [&](Subset A2) {
            const std::vector<Subset> pair = {A1, A2};
            const auto sums = pollard_lhs_rhs(ctx, pair, r0);
            const auto e = classify_equality_k2(ctx, A1, A2, r0);
            EXPECT_EQ(sums.lhs == sums.rhs, e.tag != Tag::None)
                << to_string(A1) << " " << to_string(A2) << " r0=" << r0;
          });
        });
      }
    }
  }
}

// ============================================================================
// Extremality conditions
// ============================================================================

TEST(Extremality, PaperExamplesAreExtremal) {
  {
    const PrimeContext ctx(13);
    const std::vector<Subset> rest = {make_subset(ctx, {0, 1, 3}), make_subset(ctx, {0, 2, 3, 5, 6, 7, 9, 10})};
    const Subset A0 = complement(ctx, make_subset(ctx, {3, 6, 10}));
    const auto c = check_extremality_conditions(ctx, A0, rest);
    EXPECT_EQ(c.r0, 3);
    EXPECT_TRUE(c.all());
    const std::vector<int> sizes = {10, 3, 8};
    const int t = optimal_interval_translate(ctx, sizes);
    EXPECT_EQ(s_count(ctx, A0, rest), s_count(ctx, interval(ctx, t, 10), intervals(ctx, std::span(sizes).subspan(1))));
  }
  {
    const PrimeContext ctx(11);
    const Subset A = make_subset(ctx, {0, 1, 2, 3, 4, 5, 7});
    const std::vector<Subset> rest = {A, A};
    const Subset A0 = make_subset(ctx, {0, 2, 10});
    const auto c = check_extremality_conditions(ctx, A0, rest);
    EXPECT_EQ(c.r0, 3);
    EXPECT_TRUE(c.all());
    const std::vector<int> sizes = {3, 7, 7};
    const int t = optimal_interval_translate(ctx, sizes);
    EXPECT_EQ(s_count(ctx, A0, rest), s_count(ctx, interval(ctx, t, 3), intervals(ctx, std::span(sizes).subspan(1))));
  }
}

TEST(Extremality, AgreesWithMinimumAtFive) {
  const PrimeContext ctx(5);
  for (int a0 = 1; a0 < 5; ++a0) {
    for (int a1 = 1; a1 < 5; ++a1) {
      for (int a2 = 1; a2 < 5; ++a2) {
        const BigInt min = oracle::min_s(5, {a0, a1, a2});
        for_each_subset(ctx, a1, [&](Subset A1) {
          for_each_subset(ctx, a2, [&](Subset A2) {
            const std::vector<Subset> rest = {A1, A2};
            const ExtremalityChecker checker(ctx, rest);
            for_each_subset(ctx, a0, [&](Subset A0) {
              EXPECT_EQ(checker.check(A0).all(), s_count(ctx, A0, rest) == min);
            });
          });
        });
      }
    }
  }
}

TEST(Extremality, RejectsDegenerateSizes) {
  const PrimeContext ctx(5);
  const std::vector<Subset> rest = {interval(ctx, 0, 5)};
  EXPECT_THROW(ExtremalityChecker(ctx, rest), std::invalid_argument);
  const std::vector<Subset> ok = {interval(ctx, 0, 2)};
  EXPECT_THROW(check_extremality_conditions(ctx, Subset{}, ok), std::invalid_argument);
}

// ============================================================================
// Optimal interval translate
// ============================================================================

TEST(OptimalTranslate, SeventeenFourteen) {
  const PrimeContext ctx(17);
  const std::vector<int> sizes = {14, 14, 14, 14};
  const int t = optimal_interval_translate(ctx, sizes);
  EXPECT_EQ(s_count(ctx, interval(ctx, t, 14), intervals(ctx, std::span(sizes).subspan(1))), 2255);
}

TEST(OptimalTranslate, IntersectionIdentity) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const int p = testing_support::kSmallPrimes[oracle::uniform(rng, 0, 4)];
    const PrimeContext ctx(p);
    const int k = oracle::uniform(rng, 1, 3);
    std::vector<int> sizes = {oracle::uniform(rng, 1, p - 1)};
    for (int j = 0; j < k; ++j) sizes.push_back(oracle::uniform(rng, 0, p));
    const int t = optimal_interval_translate(ctx, sizes);
    const Subset I = interval(ctx, t, sizes[0]);
    const auto rest = intervals(ctx, std::span(sizes).subspan(1));
    const CountVector sg = sigma_vector(ctx, rest);
    const auto prof = threshold_profile(sg);
    BigInt expected = 0;
    for (std::int64_t r = 1; r <= prof.r_max; ++r) {
      const int want = std::max<int>(0, int(prof.at(r)) + sizes[0] - p);
      EXPECT_EQ(Subset::from_word(I.word() & level_set(sg, r).word()).size(), want);
      expected += want;
    }
    EXPECT_EQ(s_count(ctx, I, rest), expected);
    if (p <= 7 && k <= 2) {
      EXPECT_EQ(expected, oracle::min_s(p, sizes));
    }
  }
}
