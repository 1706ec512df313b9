#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "geocast/model.hpp"
#include "geocast/protocols.hpp"

namespace geocast {

enum class Metric { RecMess, Transmissions, Activations };

std::string to_string(Metric metric);
Metric parse_metric(const std::string& text);

struct ExperimentSpec {
  ProtocolConfig protocol = ProtocolConfig::cdp();
  bool bounded = false;
  std::vector<int> n_values;
  std::vector<int> k_values;
  std::vector<int> r_values;  // used when bounded
  int trials = 30;
  std::uint64_t base_seed = 1;
  Metric metric = Metric::RecMess;
  // "fair", "ltr", "near-target" or "explicit:..." (delay protocols ignore it).
  std::string schedule = "fair";
  int jobs = 1;

  // Throws std::invalid_argument on empty grids, trials < 1 or r missing.
  void validate() const;
};

struct PointParams {
  int n = 0;
  int k = 0;
  int r = 0;  // 0 when unbounded

  Scenario scenario() const;
  auto operator<=>(const PointParams&) const = default;
};

struct SweepPoint {
  PointParams params;
  int trials = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  bool valid = true;  // false if any run hit its activation cap
};

struct SweepTable {
  std::string protocol;
  std::string scenario;  // "unbounded" or "bounded"
  Metric metric = Metric::RecMess;
  std::vector<SweepPoint> points;
};

// Seed of one trial, derived from the base seed, the trial index and the
// grid point so that points and trials are independent of execution order.
std::uint64_t trial_seed(std::uint64_t base_seed, int trial, const PointParams& params);

// Value of the chosen metric for one fair-access (or delay) run.
double run_trial(const ExperimentSpec& spec, const PointParams& params, int trial,
                 bool* terminated = nullptr);

SweepTable run_sweep(const ExperimentSpec& spec);

struct FitPoint {
  PointParams params;
  double mean = 0.0;
  double stderr_ = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
};

struct FitReport {
  std::vector<FitPoint> points;
  double ratio_spread = 0.0;  // max ratio / min ratio
  double cv = 0.0;            // coefficient of variation of the ratios
};

using ReferenceFn = std::function<double(const PointParams&)>;

// Throws std::invalid_argument if a reference value is zero or negative.
FitReport ratio_stability(const SweepTable& table, const ReferenceFn& reference);

// Table-2 reference of the sweep's protocol, or an empty function if none.
ReferenceFn table2_reference_fn(const ExperimentSpec& spec);

inline constexpr int kReportSchemaVersion = 1;

// CSV header: protocol,scenario,n,k,r,metric,trials,mean,stderr,reference,ratio
void write_csv(std::ostream& out, const SweepTable& table, const FitReport* fit = nullptr);
void write_json(std::ostream& out, const SweepTable& table, const FitReport* fit = nullptr);

// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_key_value_config(std::istream& in);

// Builds a spec from config keys: protocol, M, T, cancel, delay, md,
// scenario (unbounded|bounded), n, k, r (comma lists), trials, seed,
// metric, schedule, jobs.
ExperimentSpec spec_from_config(const std::map<std::string, std::string>& config);

}  // namespace geocast
