#include <gtest/gtest.h>

#include "geocast/engine.hpp"

using namespace geocast;

TEST(Run, FloodingUnbounded) {
  for (std::uint64_t seed : {1u, 2u, 77u}) {
    const RunResult r = run(Scenario::unbounded(6, 4), ProtocolConfig::flooding(), activation::FairUniform{seed});
    EXPECT_EQ(r.rec_mess, 16);
    EXPECT_TRUE(r.terminated);
    EXPECT_TRUE(r.delivered_all);
  }
}

TEST(Run, MHeuristicUnbounded) {
  for (auto src : {ActivationSource{activation::LeftToRight{}}, ActivationSource{activation::NearTargetFirst{}},
                   ActivationSource{activation::FairUniform{3}}})
    EXPECT_EQ(run(Scenario::unbounded(5, 2), ProtocolConfig::m_heuristic(3), src).rec_mess, 6);
}

TEST(Run, CdBestCase) {
  const RunResult r = run(Scenario::unbounded(4, 2), ProtocolConfig::cd(), activation::Explicit{{3, 3}});
  EXPECT_EQ(r.rec_mess, 2);
  EXPECT_TRUE(r.terminated);
}

TEST(Run, FloodingBounded) {
  const RunResult r = run(Scenario::bounded(100, 2, 3), ProtocolConfig::flooding(), activation::FairUniform{9});
  EXPECT_EQ(r.rec_mess, 12);
  EXPECT_TRUE(r.delivered_all);
}

TEST(Run, CapReported) {
  const RunResult r =
      run(Scenario::unbounded(6, 4), ProtocolConfig::flooding(), activation::LeftToRight{}, RunLimits{3});
  EXPECT_FALSE(r.terminated);
  EXPECT_EQ(r.activations, 3);
  EXPECT_THROW(run(Scenario::unbounded(6, 4), ProtocolConfig::flooding(), activation::LeftToRight{},
                   RunLimits{0}),
               std::invalid_argument);
}

TEST(Run, DelayNeedsDelaySchedule) {
  const auto d = ProtocolConfig::delay_based(CancelRule::OnCloser, DelayKind::D2);
  EXPECT_THROW(run(Scenario::unbounded(6, 2), d, activation::FairUniform{1}), std::invalid_argument);
  EXPECT_THROW(run(Scenario::unbounded(6, 2), ProtocolConfig::cd(), activation::DelayDriven{1}),
               std::invalid_argument);
  const RunResult r = run(Scenario::unbounded(8, 2), d, activation::DelayDriven{1});
  EXPECT_TRUE(r.terminated);
  EXPECT_TRUE(r.delivered_all);
}

TEST(Run, DelayBoundedDelivers) {
  for (auto cancel : {CancelRule::OnCloser, CancelRule::OnDuplicate})
    for (auto kind : {DelayKind::D1, DelayKind::D2, DelayKind::D3, DelayKind::D4}) {
      const RunResult r =
          run(Scenario::bounded(30, 3, 3), ProtocolConfig::delay_based(cancel, kind), activation::DelayDriven{4});
      EXPECT_TRUE(r.terminated);
      EXPECT_LE(r.transmissions_total, 30 * 3);
    }
}

TEST(Trace, FigureOrder) {
  const Scenario sc = Scenario::unbounded(6, 4);
  const auto steps = trace(sc, ProtocolConfig::flooding(), activation::Explicit{{3, 2, 5, 1, 4, 2}});
  ASSERT_EQ(steps.size(), 6u);
  const std::vector<NodeIndex> nodes = {3, 2, 5, 4, 2};
  const std::vector<MessageId> sent = {1, 1, 1, 1, 2};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    EXPECT_EQ(steps[i + 1].activation->node, nodes[i]);
    EXPECT_EQ(steps[i + 1].activation->message, sent[i]);
  }
  const GridSnapshot& last = steps.back().grid;
  EXPECT_EQ(last[1], (std::vector<MessageId>{3, 4}));
  for (int i : {2, 3, 4}) EXPECT_EQ(last[i], (std::vector<MessageId>{2, 3, 4}));
  const std::string art = render_trace(sc, steps);
  EXPECT_NE(art.find("round 5: node 2 sends 2"), std::string::npos);
}

TEST(Trace, EmptySchedule) {
  const auto steps = trace(Scenario::unbounded(5, 2), ProtocolConfig::cd(), activation::Explicit{});
  EXPECT_EQ(steps.size(), 1u);
  EXPECT_FALSE(steps.front().activation.has_value());
}

// Same seed: the active-node sequences coincide while the active sets do,
// and CD/CDP differ only in which ID gets sent.
TEST(Paired, CdAndCdpShareNodeSequence) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Scenario sc = Scenario::unbounded(5, 3);
    std::vector<NodeIndex> a, b;
    std::vector<std::vector<NodeIndex>> sa, sb;
    run(sc, ProtocolConfig::cd(), activation::FairUniform{seed}, {},
        [&](const WorldState& w, const ActivationRecord& r) {
          a.push_back(r.node);
          sa.push_back(w.active().members());
        });
    run(sc, ProtocolConfig::cdp(), activation::FairUniform{seed}, {},
        [&](const WorldState& w, const ActivationRecord& r) {
          b.push_back(r.node);
          sb.push_back(w.active().members());
        });
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      ASSERT_EQ(a[i], b[i]) << "seed " << seed << " step " << i;
      if (sa[i] != sb[i]) break;
    }
  }
}

TEST(Identity, UnboundedReceptions) {
  const RunResult r = run(Scenario::unbounded(9, 3), ProtocolConfig::t_heuristic(2), activation::FairUniform{8});
  for (std::size_t i = 0; i < r.per_node_receptions.size(); ++i)
    EXPECT_EQ(r.per_node_receptions[i], r.transmissions_total - r.per_node_transmissions[i]);
  EXPECT_LE(r.rec_mess, r.transmissions_total);
}
