#include <gtest/gtest.h>

#include "support.hpp"
#include "wsman/oracle.hpp"

namespace wsman {
namespace {

const FieldPrime GF3(3);
const FieldPrime GF5(5);
const FieldPrime GF7(7);
const FieldPrime GF13(13);

TEST(ConditionalEntropy, Examples) {
  const FieldMatrix g(GF5, {{1, 1, 1}, {1, 2, 3}});
  EXPECT_EQ(conditional_entropy(g, {0}, {}).q_ary_units, 1u);
  EXPECT_EQ(conditional_entropy(g, {0, 1}, {}).q_ary_units, 2u);
  EXPECT_EQ(conditional_entropy(g, {0, 1}, {0, 2}).q_ary_units, 0u);

  // Observing x1 + x2 leaves x1 uniform.
  const FieldMatrix sum(GF3, {{1}, {1}});
  EXPECT_EQ(conditional_entropy(sum, {0}, {0}).q_ary_units, 1u);
  EXPECT_EQ(conditional_entropy(sum, {0, 1}, {0}).q_ary_units, 1u);

  // Observing x1 directly.
  const FieldMatrix direct(GF3, {{1, 1}, {0, 1}});
  EXPECT_EQ(conditional_entropy(direct, {0}, {0}).q_ary_units, 0u);
  EXPECT_EQ(conditional_entropy(direct, {1}, {0}).q_ary_units, 1u);
}

TEST(ConditionalEntropy, Errors) {
  const FieldMatrix g(GF5, {{1, 1, 1}, {1, 2, 3}});
  EXPECT_THROW(conditional_entropy(g, {2}, {0}), UsageError);
  EXPECT_THROW(conditional_entropy(g, {0}, {3}), UsageError);
  EXPECT_THROW(conditional_entropy(g, {0}, {0}, 24), UsageError);
}

TEST(ConditionalEntropy, BoundedAndMonotoneInObservations) {
  SplitMix64 rng(21);
  for (int t = 0; t < 60; ++t) {
    const std::size_t k = 1 + rng.below(3);
    const std::size_t n = k + rng.below(3);
    const auto g = testing::random_matrix(rng, GF5, k, n);
    for (std::uint64_t b_mask = 1; b_mask < (1u << k); ++b_mask) {
      std::vector<std::size_t> targets;
      for (std::size_t i = 0; i < k; ++i) {
        if ((b_mask >> i) & 1) targets.push_back(i);
      }
      std::vector<std::size_t> entropy_by_mask(1u << n);
      for (std::uint64_t e_mask = 0; e_mask < (1u << n); ++e_mask) {
        std::vector<std::size_t> observed;
        for (std::size_t j = 0; j < n; ++j) {
          if ((e_mask >> j) & 1) observed.push_back(j);
        }
        const auto h = conditional_entropy(g, targets, observed).q_ary_units;
        EXPECT_LE(h, targets.size());
        EXPECT_EQ(h == targets.size(), independence_rank_criterion(g, targets, observed));
        entropy_by_mask[e_mask] = h;
        for (std::size_t j = 0; j < n; ++j) {
          if ((e_mask >> j) & 1) {
            EXPECT_LE(h, entropy_by_mask[e_mask & ~(1u << j)]);
          }
        }
      }
    }
  }
}

TEST(WeakSecurityExact, Examples) {
  EXPECT_TRUE(check_weak_security_exact(FieldMatrix(GF5, {{1, 1, 1}, {1, 2, 3}})));
  EXPECT_FALSE(check_weak_security_exact(FieldMatrix(GF5, {{1, 0, 1}, {1, 1, 3}})));
  EXPECT_FALSE(check_weak_security_exact(FieldMatrix::identity(GF5, 2)));
  EXPECT_FALSE(check_weak_security_exact(FieldMatrix::identity(GF5, 3)));
  EXPECT_TRUE(check_weak_security_exact(FieldMatrix(GF5, {{1, 2, 3}})));  // k = 1: nothing observed
}

TEST(WeakSecurityExact, MaximalObservationSetsSuffice) {
  // Compare with the definition taken literally: every E with |E| < k.
  SplitMix64 rng(22);
  for (int t = 0; t < 150; ++t) {
    const std::size_t k = 2 + rng.below(2);
    const std::size_t n = k + rng.below(3);
    const auto g = testing::random_matrix(rng, GF3, k, n);
    bool literal = true;
    for (std::size_t size = 1; size < k; ++size) {
      for_each_combination(n, size, [&](const std::vector<std::size_t>& observed) {
        for (std::size_t i = 0; i < k; ++i) {
          if (conditional_entropy(g, {i}, observed).q_ary_units != 1) literal = false;
        }
        return true;
      });
    }
    EXPECT_EQ(check_weak_security_exact(g), literal);
  }
}

TEST(BlockSecurityExact, CauchyThreeByFourOverGF7) {
  const auto g = cauchy_code(3, 4, GF7).matrix();
  EXPECT_TRUE(check_block_security_exact(g, 1, 2));
  EXPECT_TRUE(check_block_security_exact(g, 2, 1));
  EXPECT_FALSE(check_block_security_exact(g, 2, 2));
  EXPECT_FALSE(check_block_security_exact(g, 1, 3));
  EXPECT_TRUE(check_block_security_exact(g, 2, 0));
  EXPECT_EQ(block_security_level_of_code(g, 1), 2u);
  EXPECT_EQ(block_security_level_of_code(g, 2), 1u);
  EXPECT_THROW(check_block_security_exact(g, 3, 1), UsageError);
}

TEST(BlockSecurityExact, StrengthKMinusOneBlockOneIsWeakSecurity) {
  SplitMix64 rng(23);
  for (int t = 0; t < 100; ++t) {
    const std::size_t k = 2 + rng.below(2);
    const auto g = testing::random_matrix(rng, GF5, k, k + rng.below(3));
    EXPECT_EQ(check_block_security_exact(g, k - 1, 1), check_weak_security_exact(g));
  }
}

TEST(BlockSecurityExact, LevelExamples) {
  EXPECT_EQ(block_security_level_of_code(FieldMatrix::identity(GF5, 3), 1), 0u);
  EXPECT_EQ(block_security_level_of_code(FieldMatrix::identity(GF5, 3), 2), 0u);
  const FieldMatrix secure(GF5, {{1, 1, 1}, {1, 2, 3}});
  EXPECT_GE(block_security_level_of_code(secure, 1), 1u);
}

TEST(BlockSecurityExact, CauchyLevelsAreKMinusEll) {
  for (auto [k, n, p] : std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>>{
           {2, 3, 5}, {3, 4, 7}, {3, 5, 11}, {4, 5, 11}}) {
    const auto g = cauchy_code(k, n, FieldPrime(p)).matrix();
    for (std::size_t ell = 1; ell < k; ++ell) EXPECT_EQ(block_security_level_of_code(g, ell), k - ell);
  }
}

TEST(BlockSecurityExact, ConstructedCodesMeetTheTopologyProfile) {
  // A code built for a weakly secure topology is at least 1-block secure at
  // every strength; the fully connected Cauchy code attains b_l = k - l, which
  // equals the topology's profile.
  SplitMix64 rng(24);
  int checked = 0;
  while (checked < 15) {
    const std::size_t k = 2 + rng.below(2);
    const auto s = testing::random_sman(rng, k, k + 1 + rng.below(2), 80);
    if (!check_weak_security_condition(s).holds) continue;
    const auto g = construct_code(s, GF13, rng(), 4096).code.matrix();
    const auto profile = block_security_profile(s);
    for (std::size_t ell = 1; ell < k; ++ell) {
      const auto level = block_security_level_of_code(g, ell);
      EXPECT_GE(level, 1u);
      EXPECT_LE(level, profile.level(ell));
    }
    ++checked;
  }
  const auto profile = block_security_profile(Sman::all_ones(3, 4));
  const auto cauchy = cauchy_code(3, 4, GF7).matrix();
  for (std::size_t ell = 1; ell < 3; ++ell) EXPECT_EQ(block_security_level_of_code(cauchy, ell), profile.level(ell));
}

TEST(BlockSecurityExact, RankLevelsMatchEnumeratedLevels) {
  SplitMix64 rng(26);
  for (int t = 0; t < 80; ++t) {
    const std::size_t k = 2 + rng.below(2);
    const auto g = testing::random_matrix(rng, GF5, k, k + rng.below(3));
    for (std::size_t ell = 1; ell < k; ++ell) {
      EXPECT_EQ(block_security_level_by_rank(g, ell), block_security_level_of_code(g, ell));
    }
  }
}

TEST(IndependenceRankCriterion, Examples) {
  const FieldMatrix g(GF5, {{1, 1, 1}, {1, 2, 3}});
  EXPECT_TRUE(independence_rank_criterion(g, {}, {0, 1}));
  EXPECT_TRUE(independence_rank_criterion(g, {0, 1}, {}));
  EXPECT_TRUE(independence_rank_criterion(g, {0}, {2}));
  EXPECT_FALSE(independence_rank_criterion(g, {0}, {1, 2}));
}

TEST(Oracle, AlgebraicCriterionMatchesEntropy) {
  // Weak security via unit vectors in the row space of transposed column
  // selections, against the exhaustive entropy definition.
  SplitMix64 rng(25);
  int secure = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t k = 1 + rng.below(3);
    const std::size_t n = k + rng.below(6 - k);
    const auto g = testing::random_matrix(rng, GF5, k, n);
    const bool exact = check_weak_security_exact(g);
    EXPECT_EQ(verify_weak_security_code(g), exact);
    secure += exact ? 1 : 0;
  }
  EXPECT_GT(secure, 40);
}

}  // namespace
}  // namespace wsman
