#include <gtest/gtest.h>

#include <sstream>

#include "json.hpp"

#include "geocast/experiments.hpp"

using namespace geocast;

namespace {

ExperimentSpec small_spec() {
  ExperimentSpec s;
  s.protocol = ProtocolConfig::cdp();
  s.n_values = {16, 32};
  s.k_values = {2};
  s.trials = 40;
  s.base_seed = 7;
  return s;
}

}  // namespace

TEST(Sweep, DeterministicAcrossJobCounts) {
  ExperimentSpec a = small_spec();
  ExperimentSpec b = small_spec();
  b.jobs = 4;
  const SweepTable ta = run_sweep(a);
  const SweepTable tb = run_sweep(b);
  ASSERT_EQ(ta.points.size(), 2u);
  for (std::size_t i = 0; i < ta.points.size(); ++i) {
    EXPECT_EQ(ta.points[i].mean, tb.points[i].mean);
    EXPECT_TRUE(ta.points[i].valid);
  }
}

TEST(Sweep, Validation) {
  ExperimentSpec s = small_spec();
  s.r_values = {2};
  EXPECT_THROW(run_sweep(s), std::invalid_argument);
  s = small_spec();
  s.trials = 0;
  EXPECT_THROW(run_sweep(s), std::invalid_argument);
}

TEST(Fit, RatioSpread) {
  SweepTable t;
  t.points = {{{10, 1, 0}, 1, 2.0, 0, 0, 0, true}, {{20, 1, 0}, 1, 6.0, 0, 0, 0, true}};
  const FitReport f = ratio_stability(t, [](const PointParams& p) { return p.n / 10.0; });
  EXPECT_DOUBLE_EQ(f.points[0].ratio, 2.0);
  EXPECT_DOUBLE_EQ(f.points[1].ratio, 3.0);
  EXPECT_DOUBLE_EQ(f.ratio_spread, 1.5);
}

TEST(Report, CsvAndJson) {
  const ExperimentSpec s = small_spec();
  const SweepTable t = run_sweep(s);
  const FitReport f = ratio_stability(t, table2_reference_fn(s));
  std::ostringstream csv, js;
  write_csv(csv, t, &f);
  write_json(js, t, &f);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "protocol,scenario,n,k,r,metric,trials,mean,stderr,reference,ratio");
  const auto doc = nlohmann::json::parse(js.str());
  EXPECT_EQ(doc["schema_version"], 1);
  EXPECT_EQ(doc["points"].size(), 2u);
  EXPECT_TRUE(doc.contains("fit"));
}

TEST(Config, KeyValue) {
  std::istringstream in("# sweep\nprotocol = m\nM = 3\nscenario = bounded\nr = 2\nn = 10, 20\nk = 1\ntrials = 5\n");
  const ExperimentSpec s = spec_from_config(parse_key_value_config(in));
  EXPECT_EQ(s.protocol.name(), "m3");
  EXPECT_TRUE(s.bounded);
  EXPECT_EQ(s.n_values, (std::vector<int>{10, 20}));
  std::istringstream bad("protocol = cd\nM = 2\nn = 5\nk = 1\n");
  EXPECT_THROW(spec_from_config(parse_key_value_config(bad)), std::invalid_argument);
  std::istringstream unknown("protocol = cd\ncolour = red\n");
  EXPECT_THROW(spec_from_config(parse_key_value_config(unknown)), std::invalid_argument);
}
