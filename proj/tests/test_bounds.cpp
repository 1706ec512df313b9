#include <gtest/gtest.h>

#include <cmath>

#include "geocast/bounds.hpp"

using namespace geocast;

TEST(Table1, Entries) {
  auto f = *table1_bounds(ProtocolConfig::flooding(), Scenario::unbounded(6, 4));
  EXPECT_TRUE(f.exact);
  EXPECT_EQ(f.lower, 16);
  auto t = *table1_bounds(ProtocolConfig::t_heuristic(2), Scenario::unbounded(10, 3));
  EXPECT_EQ(t.lower, 9);
  EXPECT_EQ(t.upper, 15);
  auto cd = *table1_bounds(ProtocolConfig::cd(), Scenario::bounded(20, 4, 5));
  EXPECT_EQ(cd.lower, 10);
  EXPECT_EQ(cd.upper, 40);
  EXPECT_EQ(table1_bounds(ProtocolConfig::m_heuristic(3), Scenario::unbounded(9, 2))->upper, 6);
  EXPECT_FALSE(table1_bounds(ProtocolConfig::delay_based(CancelRule::OnCloser, DelayKind::D2),
                             Scenario::unbounded(6, 2)));
}

TEST(Table1, Conformance) {
  const Scenario sc = Scenario::unbounded(10, 3);
  EXPECT_TRUE(table1_conforms(ProtocolConfig::t_heuristic(2), sc, 6, 18));
  EXPECT_FALSE(table1_conforms(ProtocolConfig::t_heuristic(2), sc, 5, 15));
  EXPECT_FALSE(table1_conforms(ProtocolConfig::flooding(), sc, 24, 25));
}

TEST(Table2, References) {
  EXPECT_NEAR(*table2_reference(ProtocolConfig::cdp(), Reach::unbounded(), 55, 3), 12.02, 0.01);
  EXPECT_NEAR(*table2_reference(ProtocolConfig::cd(), Reach::unbounded(), 7, 7), 49 * std::log(2.0), 1e-12);
  EXPECT_EQ(*table2_reference(ProtocolConfig::cdp(), Reach::bounded(3), 100, 7), 7.0);
  EXPECT_EQ(*table2_reference(ProtocolConfig::cd(), Reach::unbounded(), 16, 32), 512.0);
  EXPECT_FALSE(table2_reference(ProtocolConfig::flooding(), Reach::unbounded(), 16, 2));
}

TEST(Chernoff, RateFunction) {
  EXPECT_DOUBLE_EQ(chernoff_h(1.0), 0.0);
  EXPECT_NEAR(chernoff_h(std::exp(1.0)), 1.0, 1e-12);
  EXPECT_THROW(chernoff_h(-1.0), std::invalid_argument);
}

TEST(Chernoff, GeometricSum) {
  EXPECT_DOUBLE_EQ(geo_sum_tail_bound(10, 0.5, 20, TailSide::Upper), 1.0);
  EXPECT_NEAR(geo_sum_tail_bound(10, 0.5, 10, TailSide::Lower), std::exp(-5 * chernoff_h(2.0)), 1e-15);
  EXPECT_THROW(geo_sum_tail_bound(10, 0.5, 10, TailSide::Upper), std::invalid_argument);
  EXPECT_THROW(geo_sum_tail_bound(10, 0.5, 40, TailSide::Lower), std::invalid_argument);
}

TEST(ZTail, Values) {
  EXPECT_NEAR(z_tail_bound(1000, 20), 9.54e-4, 1e-6);
  EXPECT_EQ(z_tail_bound(2, 0), 1.0);
  EXPECT_EQ(z_tail_bound(4, 2), 1.0);
}

TEST(Delay2, Reference) {
  EXPECT_EQ(delay2_recmess_reference(16, 3), 8.0);
  EXPECT_EQ(delay2_recmess_reference(16, 4), 16.0);
  EXPECT_EQ(delay2_recmess_reference(2, 1), 2.0);
}
