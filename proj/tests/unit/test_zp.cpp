#include <gtest/gtest.h>

#include "addcount/errors.hpp"
#include "addcount/zp.hpp"
#include "support.hpp"

using namespace addcount;
using testing_support::random_map;
using testing_support::random_subset;
using testing_support::to_set;
using testing_support::to_subset;

TEST(PrimeContext, AcceptsOnlyPrimesInRange) {
  for (int p : {3, 5, 7, 11, 13, 31, 61}) EXPECT_NO_THROW(PrimeContext{p});
  for (int bad : {-7, 0, 1, 2, 4, 9, 15, 25, 63, 67}) EXPECT_THROW(PrimeContext{bad}, std::invalid_argument);
}

TEST(PrimeContext, InverseTable) {
  for (int p : {3, 7, 13, 61}) {
    const PrimeContext ctx(p);
    for (int x = 1; x < p; ++x) EXPECT_EQ(ctx.mul(x, ctx.inverse(x)), 1);
    EXPECT_THROW(ctx.inverse(0), std::invalid_argument);
    EXPECT_THROW(ctx.inverse(p), std::invalid_argument);
  }
}

TEST(PrimeContext, Reduce) {
  const PrimeContext ctx(7);
  EXPECT_EQ(ctx.reduce(-1), 6);
  EXPECT_EQ(ctx.reduce(-8), 6);
  EXPECT_EQ(ctx.reduce(15), 1);
}

TEST(Subset, WordInvariants) {
  const PrimeContext ctx(13);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const int a = oracle::uniform(rng, 0, 13);
    const Subset A = random_subset(rng, ctx, a);
    EXPECT_EQ(A.size(), a);
    EXPECT_EQ(std::popcount(A.word()), a);
    EXPECT_EQ(A.word() & ~ctx.full_mask(), 0u);
  }
  EXPECT_THROW(subset_from_word(ctx, Word{1} << 13), std::invalid_argument);
}

TEST(Subset, LiteralsReduceAndRejectDuplicates) {
  const PrimeContext ctx(7);
  EXPECT_EQ(make_subset(ctx, {-1, 7, 8}).residues(), (std::vector<int>{0, 1, 6}));
  EXPECT_THROW(make_subset(ctx, {0, 7}), std::invalid_argument);
  EXPECT_EQ(interval(ctx, -1, 3).residues(), (std::vector<int>{0, 1, 6}));
  EXPECT_EQ(punctured_interval(ctx, 4).residues(), (std::vector<int>{0, 1, 2, 4}));
  EXPECT_EQ(complement(ctx, interval(ctx, 0, 3)).residues(), (std::vector<int>{3, 4, 5, 6}));
}

TEST(Subset, ArithmeticProgressions) {
  const PrimeContext ctx(11);
  EXPECT_TRUE(is_interval(ctx, interval(ctx, 9, 4)));
  EXPECT_FALSE(is_interval(ctx, punctured_interval(ctx, 4)));
  const auto d = ap_differences(ctx, make_subset(ctx, {0, 3, 6}));
  EXPECT_NE(std::find(d.begin(), d.end(), 3), d.end());
  EXPECT_NE(std::find(d.begin(), d.end(), 8), d.end());  // the reversed progression
  EXPECT_TRUE(ap_differences(ctx, make_subset(ctx, {0, 1, 3})).empty());
}

TEST(AffineMap, Examples) {
  const PrimeContext ctx(7);
  const Subset A = make_subset(ctx, {0, 1, 3});
  EXPECT_EQ(apply_affine(ctx, AffineMap::identity(), A), A);
  EXPECT_EQ(apply_affine(ctx, {2, 1}, A), A);
  for (int a = 1; a < 7; ++a) {
    const Subset I = interval(ctx, 0, a);
    EXPECT_EQ(apply_affine(ctx, {ctx.neg(1), a - 1}, I), I);
  }
  EXPECT_THROW(apply_affine(ctx, {0, 1}, A), std::invalid_argument);
  EXPECT_THROW(apply_affine(ctx, {7, 1}, A), std::invalid_argument);
}

TEST(AffineMap, GroupAxioms) {
  std::mt19937_64 rng(2);
  for (int p : {5, 11, 13}) {
    const PrimeContext ctx(p);
    for (int i = 0; i < 300; ++i) {
      const auto f = random_map(rng, p);
      const auto g = random_map(rng, p);
      const auto h = random_map(rng, p);
      EXPECT_EQ(compose(ctx, f, compose(ctx, g, h)), compose(ctx, compose(ctx, f, g), h));
      EXPECT_EQ(compose(ctx, f, inverse(ctx, f)), AffineMap::identity());
      EXPECT_EQ(compose(ctx, AffineMap::identity(), f), f);
      const Subset A = random_subset(rng, ctx, oracle::uniform(rng, 0, p));
      EXPECT_EQ(apply_affine(ctx, compose(ctx, f, g), A), apply_affine(ctx, f, apply_affine(ctx, g, A)));
      EXPECT_EQ(to_set(apply_affine(ctx, f, A)), oracle::affine_image(p, to_set(A), f.xi, f.eta));
    }
  }
}

TEST(CanonicalForm, TranslatesAndNonEquivalence) {
  const PrimeContext c7(7);
  EXPECT_EQ(canonical_form(c7, make_subset(c7, {2, 3, 4})), canonical_form(c7, make_subset(c7, {0, 1, 2})));
  for (int p : {7, 11, 13}) {
    const PrimeContext ctx(p);
    for (int a = 3; a <= p - 3; ++a) {
      EXPECT_NE(canonical_form(ctx, interval(ctx, 0, a)), canonical_form(ctx, punctured_interval(ctx, a)));
    }
  }
}

TEST(CanonicalForm, ConstantOnOrbitsAndIdempotent) {
  std::mt19937_64 rng(3);
  for (int p : {7, 11, 13}) {
    const PrimeContext ctx(p);
    for (int i = 0; i < 200; ++i) {
      const Subset A = random_subset(rng, ctx, oracle::uniform(rng, 0, p));
      const Subset c = canonical_form(ctx, A);
      EXPECT_EQ(canonical_form(ctx, c), c);
      EXPECT_EQ(canonical_form(ctx, apply_affine(ctx, random_map(rng, p), A)), c);
      EXPECT_LE(c.word(), A.word());
    }
  }
}

TEST(CanonicalForm, PartialForms) {
  const PrimeContext ctx(11);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    const Subset A = random_subset(rng, ctx, 4);
    const auto [T, t] = translation_canonical_form(ctx, A);
    EXPECT_EQ(translate(ctx, A, t), T);
    EXPECT_EQ(dilation_canonical_form(ctx, dilate(ctx, A, oracle::uniform(rng, 1, 10))), dilation_canonical_form(ctx, A));
  }
}

TEST(OrbitCatalog, SevenThree) {
  const PrimeContext ctx(7);
  const OrbitCatalog cat = build_orbit_catalog(ctx, 3);
  ASSERT_EQ(cat.size(), 2u);
  const std::size_t ap = cat.orbit_index(ctx, interval(ctx, 0, 3));
  EXPECT_EQ(cat.orbit_sizes[ap], 21u);
  EXPECT_EQ(cat.orbit_sizes[1 - ap], 14u);
  EXPECT_EQ(cat.orbit_sizes[ap], 7u * 6u / 2u);
}

TEST(OrbitCatalog, MatchesBruteOracle) {
  for (int p : testing_support::kSmallPrimes) {
    const PrimeContext ctx(p);
    for (int a = 0; a <= p; ++a) {
      const OrbitCatalog cat = build_orbit_catalog(ctx, a);
      EXPECT_EQ(cat.size(), oracle::orbit_count(p, a)) << "p=" << p << " a=" << a;
      std::uint64_t total = 0;
      for (std::size_t i = 0; i < cat.size(); ++i) {
        total += cat.orbit_sizes[i];
        EXPECT_EQ((std::uint64_t(p) * (p - 1)) % cat.orbit_sizes[i], 0u);
        EXPECT_EQ(cat.orbit_sizes[i] * cat.stabilizer_order(i), std::uint64_t(p) * (p - 1));
        EXPECT_EQ(canonical_form(ctx, cat.reps[i]), cat.reps[i]);
      }
      EXPECT_EQ(total, binomial(p, a));
    }
  }
}

TEST(OrbitCatalog, SameRepIffEquivalent) {
  std::mt19937_64 rng(5);
  const PrimeContext ctx(13);
  const OrbitCatalog cat = build_orbit_catalog(ctx, 5);
  for (int i = 0; i < 300; ++i) {
    const Subset A = random_subset(rng, ctx, 5);
    const Subset B = i % 3 == 0 ? apply_affine(ctx, random_map(rng, 13), A) : random_subset(rng, ctx, 5);
    EXPECT_EQ(cat.orbit_index(ctx, A) == cat.orbit_index(ctx, B), oracle::equivalent(13, to_set(A), to_set(B)));
  }
}

TEST(OrbitCatalog, SmallAndLargeSizesFormOneOrbit) {
  for (int p = 3; p <= 19; ++p) {
    if (!is_prime(p)) continue;
    const PrimeContext ctx(p);
    for (int a : {0, 1, 2, p - 2, p - 1, p}) {
      if (a < 0) continue;
      EXPECT_EQ(build_orbit_catalog(ctx, a).size(), 1u) << "p=" << p << " a=" << a;
    }
  }
}

TEST(OrbitCatalog, Guard) {
  const PrimeContext ctx(61);
  EXPECT_THROW(build_orbit_catalog(ctx, 30), SizeLimitError);
}

TEST(Enumeration, VisitsEverySubsetOnce) {
  const PrimeContext ctx(11);
  for (int a = 0; a <= 11; ++a) {
    std::uint64_t n = 0;
    Word last = 0;
    bool increasing = true;
    for_each_subset(ctx, a, [&](Subset s) {
      if (n > 0 && s.word() <= last) increasing = false;
      last = s.word();
      ++n;
    });
    EXPECT_EQ(n, binomial(11, a));
    EXPECT_TRUE(increasing);
  }
}
