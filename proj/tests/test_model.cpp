#include <gtest/gtest.h>

#include "geocast/model.hpp"
#include "geocast/protocols.hpp"

using namespace geocast;

namespace {

std::vector<MessageId> iota_ids(int k) {
  std::vector<MessageId> v;
  for (int m = 1; m <= k; ++m) v.push_back(m);
  return v;
}

}  // namespace

TEST(Seed, UnboundedEveryRelayHoldsAllMessages) {
  const WorldState w = seed_initial_state(Scenario::unbounded(6, 4));
  for (NodeIndex i = 2; i <= 5; ++i) EXPECT_EQ(w.node(i).queue, iota_ids(4)) << "node " << i;
  EXPECT_TRUE(w.node(1).queue.empty());
  EXPECT_TRUE(w.node(6).queue.empty());
  EXPECT_TRUE(w.all_delivered());
}

TEST(Seed, BoundedOnlyFirstRColumns) {
  const WorldState w = seed_initial_state(Scenario::bounded(6, 2, 4));
  EXPECT_EQ(w.node(2).queue, iota_ids(4));
  EXPECT_EQ(w.node(3).queue, iota_ids(4));
  for (NodeIndex i : {4, 5, 6}) EXPECT_TRUE(w.node(i).queue.empty());
  EXPECT_FALSE(w.delivered(1));
  EXPECT_EQ(w.active().members(), (std::vector<NodeIndex>{2, 3}));
}

TEST(Seed, AdjacentTargetNeedsNoRun) {
  const WorldState w = seed_initial_state(Scenario::unbounded(2, 1));
  EXPECT_TRUE(w.delivered(1));
  EXPECT_TRUE(w.active().empty());
  EXPECT_EQ(w.node(2).receptions_total, 0);
}

TEST(Seed, TouchesNoCounters) {
  const WorldState w = seed_initial_state(Scenario::unbounded(5, 3));
  for (const NodeState& s : w.nodes()) {
    EXPECT_EQ(s.receptions_total, 0);
    for (const MessageRecord& r : s.records) EXPECT_EQ(r.heard_count, 0);
  }
}

TEST(Reach, Sets) {
  EXPECT_EQ(reachable_set(Scenario::bounded(6, 2, 1), 1), (std::vector<NodeIndex>{2, 3}));
  EXPECT_EQ(reachable_set(Scenario::unbounded(5, 1), 3), (std::vector<NodeIndex>{1, 2, 4, 5}));
  EXPECT_EQ(reachable_set(Scenario::bounded(4, 10, 1), 2), (std::vector<NodeIndex>{1, 3, 4}));
}

TEST(ScenarioTest, Validation) {
  EXPECT_THROW(Scenario::unbounded(1, 1).validate(), std::invalid_argument);
  EXPECT_THROW(Scenario::unbounded(3, 0).validate(), std::invalid_argument);
  EXPECT_THROW(Scenario::bounded(3, 0, 1).validate(), std::invalid_argument);
  EXPECT_NO_THROW(Scenario::bounded(3, 1, 1).validate());
}

TEST(Reception, CdCloserSenderDeletes) {
  const Scenario sc = Scenario::unbounded(6, 1);
  WorldState w = seed_initial_state(sc);
  ReceptionEffects fx;
  w.dequeue(3, 1);
  apply_reception(w, Transmission{3, 1, 0.0}, ProtocolConfig::cd(), &fx);
  EXPECT_EQ(fx.deleted, (std::vector<NodeIndex>{2}));
  EXPECT_TRUE(w.node(4).record(1).queued);
  EXPECT_EQ(w.node(4).record(1).best_originator_dist, 3);
  EXPECT_EQ(w.node(2).receptions_total, 1);
}

TEST(Reception, FloodingKeepsQueues) {
  WorldState w = seed_initial_state(Scenario::unbounded(5, 1));
  w.dequeue(2, 1);
  apply_reception(w, Transmission{2, 1, 0.0}, ProtocolConfig::flooding());
  w.dequeue(3, 1);
  apply_reception(w, Transmission{3, 1, 1.0}, ProtocolConfig::flooding());
  EXPECT_TRUE(w.node(4).record(1).queued);
  EXPECT_EQ(w.node(4).record(1).heard_count, 2);
  EXPECT_EQ(w.node(2).record(1).heard_count, 1);
}

TEST(Reception, MHeuristicDeletesAtMthCopy) {
  WorldState w = seed_initial_state(Scenario::unbounded(5, 1));
  const auto m2 = ProtocolConfig::m_heuristic(2);
  w.dequeue(2, 1);
  apply_reception(w, Transmission{2, 1, 0.0}, m2);
  EXPECT_TRUE(w.node(4).record(1).queued);
  w.dequeue(3, 1);
  apply_reception(w, Transmission{3, 1, 1.0}, m2);
  EXPECT_FALSE(w.node(4).record(1).queued);
  EXPECT_TRUE(w.active().empty());
}

TEST(NodeSetTest, RankQueries) {
  NodeSet s(10);
  for (int i : {7, 2, 9, 4}) s.insert(i);
  EXPECT_EQ(s.size(), 4);
  EXPECT_EQ(s.nth(0), 2);
  EXPECT_EQ(s.nth(2), 7);
  EXPECT_EQ(s.last(), 9);
  s.erase(7);
  EXPECT_FALSE(s.contains(7));
  EXPECT_EQ(s.members(), (std::vector<NodeIndex>{2, 4, 9}));
}
