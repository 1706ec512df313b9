#include <gtest/gtest.h>

#include <map>

#include "geocast/engine.hpp"
#include "geocast/scheduling.hpp"

using namespace geocast;

TEST(Fair, UniformOverNonEmptyNodes) {
  WorldState w(Scenario::unbounded(6, 1));
  for (NodeIndex i : {2, 3, 5}) w.enqueue(i, 1);
  Activator act{activation::FairUniform{42}};
  std::map<NodeIndex, int> counts;
  constexpr int kDraws = 30000;
  for (int i = 0; i < kDraws; ++i) ++counts[*act.next_active(w)];
  ASSERT_EQ(counts.size(), 3u);
  for (auto [node, c] : counts) EXPECT_NEAR(c / double(kDraws), 1.0 / 3.0, 0.015) << node;
}

TEST(Fair, NoneWhenAllEmpty) {
  WorldState w(Scenario::unbounded(4, 1));
  Activator act{activation::FairUniform{1}};
  EXPECT_FALSE(act.next_active(w).has_value());
}

TEST(ExplicitSchedule, SkipsEmptyAndFlagsExhaustion) {
  WorldState w = seed_initial_state(Scenario::unbounded(4, 1));
  Activator act{activation::Explicit{{1, 3}}};
  EXPECT_EQ(act.next_active(w), 3);
  EXPECT_EQ(act.skipped(), 1);
  EXPECT_FALSE(act.next_active(w).has_value());
  EXPECT_TRUE(act.exhausted());
}

TEST(Orders, LeftAndNearTarget) {
  WorldState w = seed_initial_state(Scenario::unbounded(6, 1));
  EXPECT_EQ(Activator{activation::LeftToRight{}}.next_active(w), 2);
  EXPECT_EQ(Activator{activation::NearTargetFirst{}}.next_active(w), 5);
}

TEST(Parse, Sources) {
  EXPECT_EQ(describe(parse_activation_source("ltr", 0)), describe(ActivationSource{activation::LeftToRight{}}));
  const auto e = parse_activation_source("explicit:3,2,5", 0);
  EXPECT_EQ(std::get<activation::Explicit>(e).sequence, (std::vector<NodeIndex>{3, 2, 5}));
  EXPECT_THROW(parse_activation_source("sideways", 0), std::invalid_argument);
  EXPECT_THROW(parse_index_list("3,,2"), std::invalid_argument);
}

TEST(Delay, FunctionBoundaries) {
  EXPECT_DOUBLE_EQ(delay_value(DelayKind::D1, 4.0, 4.0, 4.0, 0.0, 0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(delay_value(DelayKind::D2, 4.0, 4.0, 4.0, 0.0, 0.0, 0.0), 4.0);
  EXPECT_DOUBLE_EQ(delay_value(DelayKind::D4, 4.0, 4.0, 0.0, 0.0, 6.0, 10.0), 0.0);
  EXPECT_GE(delay_value(DelayKind::D1, 4.0, 4.0, 9.0, 0.0, 0.0, 0.0), 0.0);
}

TEST(Delay, EqualTimesFireLowerIndexFirst) {
  EventQueue q;
  q.schedule({1.0, 5, 1});
  q.schedule({1.0, 3, 2});
  q.schedule({0.5, 7, 1});
  EXPECT_FALSE(q.schedule({2.0, 5, 1}));
  EXPECT_EQ(q.pop()->node, 7);
  EXPECT_EQ(q.pop()->node, 3);
  EXPECT_TRUE(q.cancel(5, 1));
  EXPECT_TRUE(q.empty());
}

TEST(Delay, NominalRadius) {
  EXPECT_EQ(nominal_radius(Scenario::unbounded(10, 1)), 9.0);
  EXPECT_EQ(nominal_radius(Scenario::bounded(10, 3, 1)), 3.0);
  EXPECT_EQ(effective_max_delay(protocol::DelayBased{}, Scenario::bounded(10, 3, 1)), 3.0);
}

TEST(Fair, SeedReproducible) {
  const Scenario sc = Scenario::bounded(20, 3, 4);
  std::vector<NodeIndex> a, b;
  run(sc, ProtocolConfig::cdp(), activation::FairUniform{5}, {},
      [&](const WorldState&, const ActivationRecord& r) { a.push_back(r.node); });
  run(sc, ProtocolConfig::cdp(), activation::FairUniform{5}, {},
      [&](const WorldState&, const ActivationRecord& r) { b.push_back(r.node); });
  EXPECT_EQ(a, b);
}
