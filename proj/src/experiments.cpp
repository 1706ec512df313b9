#include "geocast/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "geocast/bounds.hpp"
#include "geocast/engine.hpp"
#include "geocast/random.hpp"
#include "geocast/scheduling.hpp"

namespace geocast {

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::RecMess: return "rec_mess";
    case Metric::Transmissions: return "transmissions";
    case Metric::Activations: return "activations";
  }
  return "?";
}

Metric parse_metric(const std::string& text) {
  if (text == "rec_mess") return Metric::RecMess;
  if (text == "transmissions") return Metric::Transmissions;
  if (text == "activations") return Metric::Activations;
  throw std::invalid_argument("unknown metric '" + text + "'");
}

void ExperimentSpec::validate() const {
  protocol.validate();
  if (n_values.empty() || k_values.empty()) throw std::invalid_argument("sweep needs n and k values");
  if (bounded && r_values.empty()) throw std::invalid_argument("bounded sweep needs r values");
  if (!bounded && !r_values.empty()) throw std::invalid_argument("r values given for an unbounded sweep");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
}

Scenario PointParams::scenario() const {
  return r > 0 ? Scenario::bounded(n, r, k) : Scenario::unbounded(n, k);
}

std::uint64_t trial_seed(std::uint64_t base_seed, int trial, const PointParams& params) {
  const std::uint64_t point =
      mix64(mix64(mix64(static_cast<std::uint64_t>(params.n)) ^ static_cast<std::uint64_t>(params.k)) ^
            static_cast<std::uint64_t>(params.r));
  return mix64(base_seed ^ mix64(static_cast<std::uint64_t>(trial) + 1) ^ point);
}

double run_trial(const ExperimentSpec& spec, const PointParams& params, int trial,
                 bool* terminated) {
  const std::uint64_t seed = trial_seed(spec.base_seed, trial, params);
  const ActivationSource source = spec.protocol.is<protocol::DelayBased>()
                                      ? ActivationSource{activation::DelayDriven{seed}}
                                      : parse_activation_source(spec.schedule, seed);
  const RunResult r = run(params.scenario(), spec.protocol, source);
  if (terminated) *terminated = r.terminated;
  switch (spec.metric) {
    case Metric::RecMess: return static_cast<double>(r.rec_mess);
    case Metric::Transmissions: return static_cast<double>(r.transmissions_total);
    case Metric::Activations: return static_cast<double>(r.activations);
  }
  return 0.0;
}

namespace {

std::vector<PointParams> grid_points(const ExperimentSpec& spec) {
  std::vector<PointParams> out;
  const std::vector<int> radii = spec.bounded ? spec.r_values : std::vector<int>{0};
  for (int r : radii)
    for (int n : spec.n_values)
      for (int k : spec.k_values) out.push_back({n, k, r});
  return out;
}

SweepPoint run_point(const ExperimentSpec& spec, const PointParams& params) {
  std::vector<double> values(spec.trials, 0.0);
  std::vector<char> ok(spec.trials, 1);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < spec.trials; t = next++) {
      bool terminated = true;
      values[t] = run_trial(spec, params, t, &terminated);
      ok[t] = terminated ? 1 : 0;
    }
  };
  const int threads = std::min(spec.jobs, spec.trials);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Reduced in trial order, independent of which thread ran what.
  SweepPoint p;
  p.params = params;
  p.trials = spec.trials;
  double sum = 0.0;
  for (double v : values) sum += v;
  p.mean = sum / spec.trials;
  double ss = 0.0;
  for (double v : values) ss += (v - p.mean) * (v - p.mean);
  p.stderr_ = spec.trials > 1 ? std::sqrt(ss / (spec.trials - 1) / spec.trials) : 0.0;
  p.min_value = *std::min_element(values.begin(), values.end());
  p.max_value = *std::max_element(values.begin(), values.end());
  p.valid = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  return p;
}

}  // namespace

SweepTable run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  SweepTable table;
  table.protocol = spec.protocol.name();
  table.scenario = spec.bounded ? "bounded" : "unbounded";
  table.metric = spec.metric;
  for (const PointParams& params : grid_points(spec)) table.points.push_back(run_point(spec, params));
  return table;
}

FitReport ratio_stability(const SweepTable& table, const ReferenceFn& reference) {
  FitReport report;
  if (table.points.empty()) return report;
  double lo = 0.0;
  double hi = 0.0;
  double sum = 0.0;
  for (const SweepPoint& p : table.points) {
    const double ref = reference(p.params);
    if (!(ref > 0.0)) throw std::invalid_argument("reference value must be positive");
    const double ratio = p.mean / ref;
    report.points.push_back({p.params, p.mean, p.stderr_, ref, ratio});
    lo = report.points.size() == 1 ? ratio : std::min(lo, ratio);
    hi = report.points.size() == 1 ? ratio : std::max(hi, ratio);
    sum += ratio;
  }
  const double count = static_cast<double>(report.points.size());
  const double mean = sum / count;
  double ss = 0.0;
  for (const FitPoint& f : report.points) ss += (f.ratio - mean) * (f.ratio - mean);
  report.ratio_spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  report.cv = mean > 0.0 ? std::sqrt(ss / count) / mean : 0.0;
  return report;
}

ReferenceFn table2_reference_fn(const ExperimentSpec& spec) {
  const ProtocolConfig protocol = spec.protocol;
  const bool bounded = spec.bounded;
  if (!table2_reference(protocol, Reach::unbounded(), 2, 1)) return {};
  return [protocol, bounded](const PointParams& p) {
    const Reach reach = bounded ? Reach::bounded(p.r) : Reach::unbounded();
    return *table2_reference(protocol, reach, p.n, p.k);
  };
}

namespace {

const FitPoint* fit_for(const FitReport* fit, std::size_t i) {
  if (!fit || i >= fit->points.size()) return nullptr;
  return &fit->points[i];
}

}  // namespace

void write_csv(std::ostream& out, const SweepTable& table, const FitReport* fit) {
  out << "protocol,scenario,n,k,r,metric,trials,mean,stderr,reference,ratio\n";
  out << std::setprecision(10);
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const SweepPoint& p = table.points[i];
    out << table.protocol << ',' << table.scenario << ',' << p.params.n << ',' << p.params.k << ','
        << p.params.r << ',' << to_string(table.metric) << ',' << p.trials << ',' << p.mean << ','
        << p.stderr_ << ',';
    if (const FitPoint* f = fit_for(fit, i))
      out << f->reference << ',' << f->ratio;
    else
      out << ',';
    out << '\n';
  }
}

void write_json(std::ostream& out, const SweepTable& table, const FitReport* fit) {
  nlohmann::json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["protocol"] = table.protocol;
  doc["scenario"] = table.scenario;
  doc["metric"] = to_string(table.metric);
  doc["points"] = nlohmann::json::array();
  for (std::size_t i = 0; i < table.points.size(); ++i) {
    const SweepPoint& p = table.points[i];
    nlohmann::json row = {{"n", p.params.n},   {"k", p.params.k},         {"r", p.params.r},
                          {"trials", p.trials}, {"mean", p.mean},         {"stderr", p.stderr_},
                          {"min", p.min_value}, {"max", p.max_value},     {"valid", p.valid}};
    if (const FitPoint* f = fit_for(fit, i)) {
      row["reference"] = f->reference;
      row["ratio"] = f->ratio;
    }
    doc["points"].push_back(row);
  }
  if (fit) doc["fit"] = {{"ratio_spread", fit->ratio_spread}, {"cv", fit->cv}};
  out << doc.dump(2) << '\n';
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_key_value_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

namespace {

std::vector<int> int_list(const std::string& text) { return parse_index_list(text); }

}  // namespace

ExperimentSpec spec_from_config(const std::map<std::string, std::string>& config) {
  auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = config.find(key);
    if (it == config.end()) return std::nullopt;
    return it->second;
  };
  static const std::vector<std::string> known = {"protocol", "M",      "T",     "cancel", "delay",
                                                 "md",       "scenario", "n",   "k",      "r",
                                                 "trials",   "seed",   "metric", "schedule", "jobs"};
  for (const auto& [key, value] : config)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown config key '" + key + "'");

  ProtocolOptions options;
  options.name = get("protocol").value_or("");
  if (auto v = get("M")) options.m_limit = std::stoi(*v);
  if (auto v = get("T")) options.t_threshold = std::stoi(*v);
  options.cancel = get("cancel");
  options.delay = get("delay");
  if (auto v = get("md")) options.max_delay = std::stod(*v);

  ExperimentSpec spec;
  spec.protocol = make_protocol(options);
  const std::string scenario = get("scenario").value_or(get("r") ? "bounded" : "unbounded");
  if (scenario != "bounded" && scenario != "unbounded")
    throw std::invalid_argument("scenario must be 'bounded' or 'unbounded'");
  spec.bounded = scenario == "bounded";
  if (auto v = get("n")) spec.n_values = int_list(*v);
  if (auto v = get("k")) spec.k_values = int_list(*v);
  if (auto v = get("r")) spec.r_values = int_list(*v);
  if (auto v = get("trials")) spec.trials = std::stoi(*v);
  if (auto v = get("seed")) spec.base_seed = std::stoull(*v);
  if (auto v = get("metric")) spec.metric = parse_metric(*v);
  if (auto v = get("schedule")) spec.schedule = *v;
  if (auto v = get("jobs")) spec.jobs = std::stoi(*v);
  spec.validate();
  return spec;
}

}  // namespace geocast
