#include <gtest/gtest.h>

#include <set>

#include "addcount/errors.hpp"
#include "addcount/extremal.hpp"
#include "addcount/fourier.hpp"
#include "support.hpp"

using namespace addcount;
using testing_support::to_set;
using testing_support::to_subset;

namespace {

void expect_same_report(const SearchReport& l, const SearchReport& r) {
  EXPECT_EQ(l.min_value, r.min_value);
  EXPECT_EQ(l.extremal_orbits, r.extremal_orbits);
  EXPECT_EQ(l.extremal_classes, r.extremal_classes);
  EXPECT_EQ(l.extremal_set_count, r.extremal_set_count);
}

std::uint64_t brute_min_sk(int p, int a, int k, std::uint64_t* count) {
  std::uint64_t best = UINT64_MAX;
  *count = 0;
  oracle::for_each_subset(p, a, [&](const oracle::Set& A) {
    const auto v = oracle::s_k(p, A, k);
    if (v < best) {
      best = v;
      *count = 0;
    }
    if (v == best) ++*count;
  });
  return best;
}

}  // namespace

// ============================================================================
// minimize_sk
// ============================================================================

TEST(MinimizeSk, SeventeenFourteen) {
  const PrimeContext ctx(17);
  const auto rep = minimize_sk(ctx, 14, 3);
  EXPECT_EQ(rep.min_value, 2255);
  EXPECT_EQ(rep.extremal_orbits.size(), 3u);
  EXPECT_EQ(rep.extremal_set_count, 144u);
  const std::set<Subset> classes(rep.extremal_classes.begin(), rep.extremal_classes.end());
  EXPECT_TRUE(classes.count(dilation_canonical_form(ctx, interval(ctx, -1, 14))));
  EXPECT_TRUE(classes.count(dilation_canonical_form(ctx, make_subset(ctx, {6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 0, 1, 3}))));
}

TEST(MinimizeSk, MatchesBruteOracle) {
  for (int p : {5, 7, 11}) {
    const PrimeContext ctx(p);
    for (int a = 1; a < p; ++a) {
      for (int k : {2, 3, 4}) {
        if (p == 11 && k == 4 && a > 6) continue;
        std::uint64_t count = 0;
        const auto want = brute_min_sk(p, a, k, &count);
        const auto rep = minimize_sk(ctx, a, k);
        EXPECT_EQ(rep.min_value.get_ui(), want) << "p=" << p << " a=" << a << " k=" << k;
        EXPECT_EQ(rep.extremal_set_count, count) << "p=" << p << " a=" << a << " k=" << k;
      }
    }
  }
}

TEST(MinimizeSk, OrbitsAgreeWithRaw) {
  for (int p : {7, 11}) {
    const PrimeContext ctx(p);
    for (int a = 0; a <= p; ++a) {
      for (int k : {2, 5, p + 1, 3 * p + 1, 40}) {
        const auto orbits = minimize_sk(ctx, a, k);
        const auto raw = minimize_sk(ctx, a, k, {SearchMethod::ExhaustiveRaw, 2});
        expect_same_report(orbits, raw);
        EXPECT_EQ(raw.method, SearchMethod::ExhaustiveRaw);
      }
    }
  }
}

TEST(MinimizeSk, ThreadCountDoesNotChangeResult) {
  const PrimeContext ctx(13);
  const auto one = minimize_sk(ctx, 5, 30, {SearchMethod::ExhaustiveOrbits, 1});
  const auto four = minimize_sk(ctx, 5, 30, {SearchMethod::ExhaustiveOrbits, 4});
  expect_same_report(one, four);
}

TEST(MinimizeSk, SmallSizesHaveOneOrbit) {
  const PrimeContext ctx(11);
  for (int a : {1, 2}) {
    const auto rep = minimize_sk(ctx, a, 4);
    EXPECT_EQ(rep.extremal_orbits.size(), 1u);
  }
}

TEST(MinimizeSk, ArgumentChecks) {
  const PrimeContext ctx(7);
  EXPECT_THROW(minimize_sk(ctx, 3, 1), std::invalid_argument);
  EXPECT_THROW(minimize_sk(ctx, 8, 2), std::invalid_argument);
  const PrimeContext big(61);
  EXPECT_THROW(minimize_sk(big, 30, 2), SizeLimitError);
}

// ============================================================================
// minimize_s_general
// ============================================================================

TEST(MinimizeS, FullIntervalAndOracleAgree) {
  std::mt19937_64 rng(40);
  for (int i = 0; i < 40; ++i) {
    const int p = oracle::uniform(rng, 0, 1) ? 5 : 7;
    const PrimeContext ctx(p);
    const int k = oracle::uniform(rng, 1, p == 5 ? 3 : 2);
    std::vector<int> sizes;
    for (int j = 0; j <= k; ++j) sizes.push_back(oracle::uniform(rng, 0, p));
    const auto full = minimize_s_general(ctx, sizes, GeneralMode::Full);
    const auto iv = minimize_s_general(ctx, sizes, GeneralMode::IntervalOnly);
    EXPECT_EQ(full.min_value, iv.min_value);
    EXPECT_EQ(full.min_value.get_ui(), oracle::min_s(p, sizes));
  }
}

TEST(MinimizeS, TrivialFirstSize) {
  const PrimeContext ctx(7);
  const std::vector<int> whole = {7, 3, 4, 2};
  EXPECT_EQ(minimize_s_general(ctx, whole, GeneralMode::IntervalOnly).min_value, 24);
  const std::vector<int> none = {0, 3, 4};
  EXPECT_EQ(minimize_s_general(ctx, none, GeneralMode::Full).min_value, 0);
  const std::vector<int> sumfree = {2, 2, 3};  // [2] + [3] misses three residues
  EXPECT_EQ(minimize_s_general(ctx, sumfree, GeneralMode::Full).min_value, 0);
}

TEST(MinimizeS, Guards) {
  const PrimeContext ctx(13);
  const std::vector<int> huge = {6, 6, 6, 6};
  EXPECT_THROW(minimize_s_general(ctx, huge, GeneralMode::Full), SizeLimitError);
  EXPECT_NO_THROW(minimize_s_general(ctx, huge, GeneralMode::IntervalOnly));
  const std::vector<int> bad = {3};
  EXPECT_THROW(minimize_s_general(ctx, bad, GeneralMode::Full), std::invalid_argument);
}

TEST(Configurations, CountsEveryTuple) {
  const PrimeContext ctx(5);
  const std::vector<int> sizes = {2, 3, 1};
  std::uint64_t n = 0;
  for_each_configuration(ctx, sizes, [&](std::span<const Subset> c) {
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[1].size(), 3);
    ++n;
  });
  EXPECT_EQ(n, 10u * 10u * 5u);
}

// ============================================================================
// Theorem verdicts
// ============================================================================

TEST(Verdicts, IntervalExtremalSmall) {
  for (int p : {3, 5}) {
    const PrimeContext ctx(p);
    const auto v = verify_thm_interval_extremal_all(ctx, 2);
    EXPECT_TRUE(v.holds());
  }
}

TEST(Verdicts, CommonSetPointNotApplicable) {
  // k = 4 = 1 mod 3 has no common-set reduction.
  const PrimeContext ctx(3);
  const std::vector<int> sizes = {2, 2, 2, 2, 2};
  const auto v = verify_thm_interval_extremal(ctx, sizes);
  ASSERT_EQ(v.points.size(), 2u);
  EXPECT_EQ(v.points[1].status, PointStatus::NotApplicable);
  EXPECT_TRUE(v.holds());

  const PrimeContext c7(7);
  const std::vector<int> equal = {3, 3, 3};
  const auto w = verify_thm_interval_extremal(c7, equal);
  ASSERT_EQ(w.points.size(), 2u);
  EXPECT_EQ(w.points[1].status, PointStatus::Holds);
}

TEST(Verdicts, KNot1SmallRange) {
  const PrimeContext ctx(7);
  const auto v = verify_thm_knot1(ctx, 3, 2, 40);
  EXPECT_TRUE(v.holds());
  ASSERT_TRUE(v.threshold.has_value());
  EXPECT_EQ(*v.threshold, 2);
}

TEST(Verdicts, ThresholdMarksEarlyMismatches) {
  const PrimeContext ctx(11);
  const auto v = verify_thm_knot1(ctx, 3, 2, 30);
  EXPECT_TRUE(v.holds());
  ASSERT_TRUE(v.threshold.has_value());
  EXPECT_EQ(*v.threshold, 3);
  EXPECT_EQ(v.points.front().status, PointStatus::BelowThreshold);
}

TEST(Verdicts, K1Thirteen) {
  const PrimeContext ctx(13);
  const auto v = verify_thm_k1(ctx, 3, 1, 40);
  EXPECT_TRUE(v.holds());
  bool saw_b = false, saw_c = false, saw_tgood = false;
  for (const auto& pt : v.points) {
    if (pt.label == "part2b") saw_b = pt.status == PointStatus::Holds;
    if (pt.label == "part2c") saw_c = pt.status == PointStatus::Holds;
    if (pt.label.rfind("t-good", 0) == 0) saw_tgood = true;
  }
  EXPECT_TRUE(saw_b);
  EXPECT_TRUE(saw_c);
  EXPECT_TRUE(saw_tgood);
}

TEST(Verdicts, Cor7) {
  const auto v = verify_cor7(13);
  EXPECT_TRUE(v.holds());
  for (const auto& pt : v.points) EXPECT_EQ(pt.status, PointStatus::Holds) << pt.label;
}

TEST(Verdicts, RangeChecks) {
  const PrimeContext ctx(7);
  EXPECT_THROW(verify_thm_knot1(ctx, 2, 2, 10), std::invalid_argument);
  EXPECT_THROW(verify_thm_k1(ctx, 3, 0, 10), std::invalid_argument);
  EXPECT_THROW(scan_k0(ctx, 3, ScanMode::KNot1, 1), std::invalid_argument);
  EXPECT_THROW(parse_scan_mode("k2"), std::invalid_argument);
  EXPECT_EQ(parse_scan_mode(to_string(ScanMode::K1Odd)), ScanMode::K1Odd);
}

// ============================================================================
// Extremality agreement and scanning
// ============================================================================

TEST(Agreement, FiveAllSizes) {
  const PrimeContext ctx(5);
  for (int a0 = 1; a0 < 5; ++a0) {
    for (int a1 = 1; a1 < 5; ++a1) {
      for (int a2 = 1; a2 < 5; ++a2) {
        const std::vector<int> sizes = {a0, a1, a2};
        const auto r = check_extremality_agreement(ctx, sizes);
        EXPECT_EQ(r.mismatches, 0u);
        EXPECT_EQ(r.minimisers, r.condition_true);
        EXPECT_EQ(r.configurations, binomial(5, a0) * binomial(5, a1) * binomial(5, a2));
        EXPECT_EQ(r.minimum.get_ui(), oracle::min_s(5, sizes));
      }
    }
  }
}

TEST(Scanner, MatchesDirectCounts) {
  const PrimeContext ctx(11);
  IncrementalScanner sc(ctx, 4);
  for (int k : {2, 3, 7, 12, 100, 250}) {
    sc.advance_to(k);
    const auto tv = sc.translate_values();
    const auto ov = sc.orbit_values();
    for (std::size_t i = 0; i < sc.catalog().size(); ++i) {
      const Subset rep = sc.catalog().reps[i];
      EXPECT_EQ(ov[i], s_k_count(ctx, rep, k));
      for (int t = 0; t < 11; t += 3) EXPECT_EQ(tv[i][t], s_k_count(ctx, translate(ctx, rep, t), k));
    }
  }
  EXPECT_THROW(sc.advance_to(5), std::invalid_argument);
}

TEST(Scanner, TranslationIrrelevantWhenKIsOneModP) {
  const PrimeContext ctx(7);
  IncrementalScanner sc(ctx, 3);
  for (int s = 1; s <= 6; ++s) {
    sc.advance_to(7 * s + 1);
    for (const auto& row : sc.translate_values()) {
      for (const auto& v : row) EXPECT_EQ(v, row.front());
    }
  }
}

TEST(Scan, KNot1Small) {
  const PrimeContext ctx(7);
  const auto rep = scan_k0(ctx, 3, ScanMode::KNot1, 60);
  ASSERT_TRUE(rep.k_star.has_value());
  EXPECT_EQ(*rep.k_star, 2);
  EXPECT_TRUE(rep.window_complete);
  EXPECT_TRUE(rep.violations.empty());
}

TEST(Scan, IncompleteWindow) {
  const PrimeContext ctx(11);
  const auto rep = scan_k0(ctx, 3, ScanMode::KNot1, 3);
  EXPECT_FALSE(rep.window_complete);  // [k*, k* + 44] cannot fit below 4 * 3
  EXPECT_LE(rep.k_max, 12);
  for (const auto& k : rep.tested) EXPECT_NE((k - 1) % 11, 0);
}
