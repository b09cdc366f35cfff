#include <gtest/gtest.h>

#include "gaussfermat/classify.hpp"
#include "gaussfermat/fermat.hpp"
#include "oracles.hpp"

using namespace gaussfermat;

TEST(GaussianRatioTest, Examples) {
  EXPECT_EQ(gaussian_fermat_ratio_test(7, {1, 2}), TestOutcome::Pass);
  EXPECT_EQ(gaussian_fermat_ratio_test(9, {1, 2}), TestOutcome::Fail);
  EXPECT_EQ(gaussian_fermat_ratio_test(15, {1, 2}), TestOutcome::InvalidBase);
}

TEST(GaussianImTest, Examples) {
  EXPECT_EQ(gaussian_fermat_im_test(13, {1, 2}), TestOutcome::Pass);
  EXPECT_EQ(gaussian_fermat_im_test(9, {1, 2}), TestOutcome::Fail);
  EXPECT_EQ(gaussian_fermat_im_test(10, {1, 2}), TestOutcome::InvalidBase);
}

TEST(GaussianTests, RangeErrors) {
  EXPECT_THROW(gaussian_fermat_ratio_test(1, {1, 2}), std::out_of_range);
  EXPECT_THROW(gaussian_fermat_im_test(kMaxModulus, {1, 2}), std::out_of_range);
  EXPECT_THROW(classical_fermat_test(0, 2), std::out_of_range);
}

TEST(IsGfp, Examples) {
  EXPECT_TRUE(is_gfp(143, {1, 2}));
  EXPECT_FALSE(is_gfp(13, {1, 2}));
  EXPECT_TRUE(is_gfp(9, {1, 1}));
  EXPECT_FALSE(is_gfp(15, {1, 2}));  // base not coprime: never a pseudoprime
}

TEST(IsGfp, AgreesWithNaiveOracle) {
  for (u64 n = 2; n < 3000; ++n) {
    for (const auto& z : kBasePanel) {
      ASSERT_EQ(is_gfp(n, z), oracle::is_gfp(n, z.re(), z.im())) << n << " " << to_string(z);
    }
  }
}

TEST(ClassicalFermat, Examples) {
  EXPECT_EQ(oracle::scalar_pow(2, 14, 15), 4u);
  EXPECT_EQ(classical_fermat_test(341, 2), TestOutcome::Pass);
  EXPECT_EQ(classical_fermat_test(15, 2), TestOutcome::Fail);
  EXPECT_EQ(classical_fermat_test(15, 3), TestOutcome::InvalidBase);
}

TEST(FermatPsp, Examples) {
  EXPECT_TRUE(is_fermat_psp(341, 2));
  EXPECT_FALSE(is_fermat_psp(341, 3));
  EXPECT_FALSE(is_fermat_psp(11, 2));
  for (u64 n = 2; n < 341; ++n) EXPECT_FALSE(is_fermat_psp(n, 2)) << n;
}

TEST(FermatPsp, AgreesWithNaiveOracle) {
  for (u64 n = 2; n < 20'000; ++n) {
    for (u64 a = 2; a <= 11; ++a) ASSERT_EQ(is_fermat_psp(n, a), oracle::is_fermat_psp(n, a));
  }
}

// =============================================================================
// Properties
// =============================================================================

TEST(FermatProperties, RatioAndImaginaryFormsAgree) {
  std::vector<GaussianBase> bases(kBasePanel.begin(), kBasePanel.end());
  for (auto extra : {GaussianBase{2, 3}, GaussianBase{5, 2}, GaussianBase{1, 8}, GaussianBase{4, 7},
                     GaussianBase{-3, 5}, GaussianBase{7, -2}, GaussianBase{6, 1},
                     GaussianBase{3, 2}}) {
    bases.push_back(extra);
  }
  ASSERT_EQ(bases.size(), 20u);
  for (u64 n = 2; n <= 1000; ++n) {
    for (const auto& z : bases) {
      ASSERT_EQ(gaussian_fermat_ratio_test(n, z), gaussian_fermat_im_test(n, z))
          << n << " " << to_string(z);
    }
  }
}

TEST(FermatProperties, PrimesNeverFail) {
  for (u64 p = 2; p <= 10'000; ++p) {
    if (!is_prime(p)) continue;
    for (const auto& z : kBasePanel) {
      ASSERT_NE(gaussian_fermat_ratio_test(p, z), TestOutcome::Fail) << p << " " << to_string(z);
      ASSERT_NE(gaussian_fermat_im_test(p, z), TestOutcome::Fail) << p;
    }
  }
}

// Swapping or conjugating a base (w = i^k z or i^k conj z) keeps the set.
TEST(FermatProperties, AssociateBasesHaveEqualPseudoprimeSets) {
  const std::pair<GaussianBase, GaussianBase> pairs[] = {
      {{1, 2}, {2, 1}}, {{1, 4}, {4, 1}}, {{1, 2}, {1, -2}}, {{3, 8}, {-8, 3}},
  };
  for (const auto& [z, w] : pairs) {
    ASSERT_EQ(z.norm(), w.norm());
    for (u64 n = 2; n < 100'000; ++n) {
      ASSERT_EQ(is_gfp(n, z), is_gfp(n, w)) << n << " " << to_string(z) << " " << to_string(w);
    }
  }
}

// Equal norm alone is not enough: 1+8i and 4+7i (norm 65) are not
// associates and already disagree at n = 9.
TEST(FermatProperties, EqualNormButNonAssociateBasesCanDiffer) {
  EXPECT_TRUE(is_gfp(9, {1, 8}));
  EXPECT_FALSE(is_gfp(9, {4, 7}));
  EXPECT_TRUE(oracle::is_gfp(9, 1, 8));
  EXPECT_FALSE(oracle::is_gfp(9, 4, 7));
}

TEST(FermatProperties, GCarmichaelNumbersPassEveryValidBase) {
  for (u64 n = 2; n <= 100'000; ++n) {
    if (!is_g_carmichael(n)) continue;
    for (const auto& z : kBasePanel) {
      const auto outcome = gaussian_fermat_ratio_test(n, z);
      ASSERT_NE(outcome, TestOutcome::Fail) << n << " " << to_string(z);
      ASSERT_EQ(is_gfp(n, z), outcome == TestOutcome::Pass);
    }
  }
}

TEST(TestOutcome, Names) {
  EXPECT_EQ(to_string(TestOutcome::Pass), "pass");
  EXPECT_EQ(to_string(TestOutcome::Fail), "fail");
  EXPECT_EQ(to_string(TestOutcome::InvalidBase), "invalid-base");
}
