#include <gtest/gtest.h>

#include "geocast/engine.hpp"
#include "geocast/protocols.hpp"
#include "geocast/random.hpp"

using namespace geocast;

TEST(Select, CdpPrefersLargestReduction) {
  WorldState w = seed_initial_state(Scenario::unbounded(6, 2));
  auto& rec1 = w.node(4).record(1);
  auto& rec2 = w.node(4).record(2);
  rec1.heard_count = rec2.heard_count = 1;
  rec1.best_originator_dist = 5;
  rec2.best_originator_dist = 3;
  EXPECT_EQ(select_message(ProtocolConfig::cdp(), 4, w), 1);
  rec1.best_originator_dist = 3;
  rec2.best_originator_dist = 5;
  EXPECT_EQ(select_message(ProtocolConfig::cdp(), 4, w), 2);
}

TEST(Select, CdpPrefersUnheard) {
  WorldState w = seed_initial_state(Scenario::unbounded(6, 3));
  w.node(4).record(1).heard_count = 1;
  w.node(4).record(1).best_originator_dist = 5;
  w.node(4).record(2).heard_count = 1;
  EXPECT_EQ(select_message(ProtocolConfig::cdp(), 4, w), 3);
}

TEST(Select, FifoHead) {
  WorldState w(Scenario::unbounded(4, 2));
  w.enqueue(2, 2);
  w.enqueue(2, 1);
  EXPECT_EQ(select_message(ProtocolConfig::cd(), 2, w), 2);
  EXPECT_FALSE(select_message(ProtocolConfig::cd(), 3, w).has_value());
}

TEST(Check, MHeuristic) {
  WorldState w = seed_initial_state(Scenario::unbounded(5, 1));
  const auto m3 = ProtocolConfig::m_heuristic(3);
  w.node(2).record(1).heard_count = 2;
  EXPECT_TRUE(transmit_check(m3, 2, 1, w));
  w.node(2).record(1).heard_count = 3;
  EXPECT_FALSE(transmit_check(m3, 2, 1, w));
}

TEST(Check, THeuristicVacuousAndStrictness) {
  WorldState w = seed_initial_state(Scenario::unbounded(8, 1));
  const auto t2 = ProtocolConfig::t_heuristic(2);
  EXPECT_TRUE(transmit_check(t2, 3, 1, w));
  w.node(3).record(1).min_transmitter_dist = 2;
  EXPECT_TRUE(transmit_check(t2, 3, 1, w));
  w.node(3).record(1).min_transmitter_dist = 1;
  EXPECT_FALSE(transmit_check(t2, 3, 1, w));
}

TEST(Check, CdStrictlyCloser) {
  WorldState w = seed_initial_state(Scenario::unbounded(6, 1));
  w.node(1).record(1).best_originator_dist = 2;
  EXPECT_FALSE(transmit_check(ProtocolConfig::cd(), 1, 1, w));
  EXPECT_TRUE(transmit_check(ProtocolConfig::cd(), 2, 1, w));
}

TEST(EagerDelete, Rules) {
  WorldState w = seed_initial_state(Scenario::unbounded(8, 1));
  EXPECT_TRUE(eager_delete_on_reception(ProtocolConfig::t_heuristic(3), 4, {6, 1, 0.0}, w));
  EXPECT_FALSE(eager_delete_on_reception(ProtocolConfig::t_heuristic(3), 4, {7, 1, 0.0}, w));
  EXPECT_FALSE(eager_delete_on_reception(ProtocolConfig::cd(), 4, {2, 1, 0.0}, w));
  EXPECT_TRUE(eager_delete_on_reception(ProtocolConfig::cd(), 4, {6, 1, 0.0}, w));
  EXPECT_FALSE(eager_delete_on_reception(ProtocolConfig::flooding(), 4, {6, 1, 0.0}, w));
}

// A message removed by eager deletion could never have passed its check.
TEST(EagerDelete, ImpliesCheckFails) {
  SplitMix64 rng(99);
  const std::vector<ProtocolConfig> protocols = {
      ProtocolConfig::m_heuristic(2), ProtocolConfig::m_heuristic(3), ProtocolConfig::t_heuristic(1),
      ProtocolConfig::t_heuristic(2), ProtocolConfig::cd(), ProtocolConfig::cdp()};
  for (int trial = 0; trial < 300; ++trial) {
    const ProtocolConfig& p = protocols[trial % protocols.size()];
    const Scenario sc = trial % 2 ? Scenario::bounded(12, 1 + trial % 3, 3) : Scenario::unbounded(10, 3);
    WorldState w = seed_initial_state(sc);
    Activator act{activation::FairUniform{rng()}};
    while (auto node = act.next_active(w)) {
      const auto m = select_message(p, *node, w);
      const bool pass = transmit_check(p, *node, *m, w);
      w.dequeue(*node, *m);
      if (!pass) continue;
      ReceptionEffects fx;
      apply_reception(w, Transmission{*node, *m, 0.0}, p, &fx);
      for (NodeIndex d : fx.deleted) EXPECT_FALSE(transmit_check(p, d, *m, w)) << p.name();
    }
  }
}

TEST(Config, NamesAndValidation) {
  EXPECT_EQ(ProtocolConfig::m_heuristic(2).name(), "m2");
  EXPECT_EQ(ProtocolConfig::delay_based(CancelRule::OnCloser, DelayKind::D2).name(), "delay-d2-closer");
  EXPECT_THROW(ProtocolConfig::m_heuristic(1).validate(), std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::t_heuristic(0).validate(), std::invalid_argument);
  EXPECT_THROW(ProtocolConfig::delay_based(CancelRule::OnCloser, DelayKind::D1, 0.0).validate(),
               std::invalid_argument);
}

TEST(Config, FlagsBelongToTheirProtocol) {
  EXPECT_THROW(make_protocol({"cd", 2, {}, {}, {}, {}}), std::invalid_argument);
  EXPECT_THROW(make_protocol({"m", {}, {}, {}, {}, {}}), std::invalid_argument);
  EXPECT_THROW(make_protocol({"delay", {}, {}, "closer", {}, {}}), std::invalid_argument);
  EXPECT_THROW(make_protocol({"bogus", {}, {}, {}, {}, {}}), std::invalid_argument);
  EXPECT_EQ(make_protocol({"t", {}, 3, {}, {}, {}}).name(), "t3");
  EXPECT_EQ(make_protocol({"delay", {}, {}, "dup", "d4", 2.0}).name(), "delay-d4-dup");
}
