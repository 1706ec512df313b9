#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "geocast/oracles.hpp"

using namespace geocast;
using namespace geocast::oracles;

TEST(Chain, SingleNodeIsDeterministic) {
  SplitMix64 rng(3);
  for (int k = 1; k <= 5; ++k) EXPECT_EQ(cdp_chain_run(1, k, rng), k);
  EXPECT_EQ(z_single_run(1, rng), 1);
}

TEST(Chain, ExactTwoStateMean) {
  const Distribution d = cdp_chain_distribution(2, 1);
  Probability mean(0);
  for (auto [t, p] : d) mean += p * t;
  EXPECT_EQ(mean, Probability(3, 2));
  SplitMix64 rng(11);
  double sum = 0;
  for (int i = 0; i < 200000; ++i) sum += static_cast<double>(cdp_chain_run(2, 1, rng));
  EXPECT_NEAR(sum / 200000, 1.5, 0.01);
}

TEST(Chain, SumOfIndependentSingles) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(max_gap(cdp_chain_distribution(n, k), cdp_chain_sequential_distribution(n, k)), Probability(0));
}

TEST(Exponential, Moments) {
  SplitMix64 rng(5);
  double s = 0, s2 = 0;
  constexpr int N = 200000;
  for (int i = 0; i < N; ++i) {
    const double w = exponential_from_uniform(rng);
    ASSERT_GE(w, 0.0);
    s += w;
    s2 += w * w;
  }
  EXPECT_NEAR(s / N, 1.0, 0.02);
  EXPECT_NEAR(s2 / N - (s / N) * (s / N), 1.0, 0.04);
}

TEST(Dominance, CoupledOrdering) {
  SplitMix64 rng(8);
  for (int i = 0; i < 10000; ++i) {
    const auto s = coupled_product_sample(100, 500, rng);
    EXPECT_LE(s.z_lower, s.z_upper);
  }
}

TEST(Lnis, Examples) {
  const std::vector<int> a = {3, 2, 5, 1, 4, 2};
  EXPECT_EQ(lnis(a), 3);  // 5 4 2
  const std::vector<int> b = {1, 2, 3};
  EXPECT_EQ(lnis(b), 1);
  const std::vector<int> c = {2, 2, 2};
  EXPECT_EQ(lnis(c), 3);
  EXPECT_EQ(first_prefix_with_lnis(a, 3), 4);
  EXPECT_EQ(first_prefix_with_lnis(b, 2), -1);
  EXPECT_EQ(lnis(std::vector<int>{}), 0);
}

TEST(Grid, FillRule) {
  GridState g{{0, 0, 0}, 0};
  grid_fill_step(g, 2, 3);
  EXPECT_EQ(g.fill_heights, (std::vector<int>{1, 1, 0}));
  grid_fill_step(g, 3, 3);
  EXPECT_EQ(g.fill_heights, (std::vector<int>{1, 1, 1}));
  grid_fill_step(g, 1, 3);
  EXPECT_EQ(g.fill_heights, (std::vector<int>{2, 1, 1}));
}

TEST(Grid, SIsFirstLnisPrefix) {
  SplitMix64 rng(13);
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + static_cast<int>(rng.below(8));
    const int k = 1 + static_cast<int>(rng.below(5));
    const auto g = grid_fill_run(n, k, rng);
    ASSERT_EQ(g.first_full, first_prefix_with_lnis(g.selections, k));
    ASSERT_LE(g.completion, static_cast<std::int64_t>(n) * k);
  }
}

TEST(Grid, NoColumnsCompletesAtOnce) {
  const Distribution d = grid_fill_distribution(0, 3);
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.begin()->first, 0);
}

TEST(Enumerate, FloodingSingleValue) {
  const auto e = enumerate_runs(Scenario::unbounded(5, 2), ProtocolConfig::flooding());
  EXPECT_TRUE(e.complete);
  EXPECT_EQ(e.min_rec_mess, 6);
  EXPECT_EQ(e.max_rec_mess, 6);
  EXPECT_GT(e.runs, 1);
}

TEST(Enumerate, CapMarksIncomplete) {
  const auto e = enumerate_runs(Scenario::unbounded(5, 2), ProtocolConfig::flooding(), 3);
  EXPECT_FALSE(e.complete);
}

TEST(Exact, EngineMatchesProcesses) {
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k <= 2; ++k) {
      EXPECT_EQ(exact_distribution_equivalence(ProcessPair::CdVersusGridFill, n, k), Probability(0));
      EXPECT_EQ(exact_distribution_equivalence(ProcessPair::CdpVersusChain, n, k), Probability(0));
    }
}

TEST(Exact, DistributionsSumToOne) {
  for (const Distribution& d : {grid_fill_distribution(3, 2), cdp_chain_distribution(3, 2),
                                engine_completion_distribution(Scenario::unbounded(5, 2), ProtocolConfig::cd())}) {
    Probability total(0);
    for (auto [t, p] : d) total += p;
    EXPECT_EQ(total, Probability(1));
  }
}
