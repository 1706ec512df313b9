#include "geocast/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "geocast/acceptance.hpp"
#include "geocast/bounds.hpp"
#include "geocast/engine.hpp"
#include "geocast/experiments.hpp"
#include "geocast/oracles.hpp"
#include "geocast/random.hpp"
#include "geocast/scheduling.hpp"

namespace geocast {

namespace {

using nlohmann::json;

struct ProtocolFlags {
  std::string name;
  std::optional<int> m;
  std::optional<int> t;
  std::optional<std::string> cancel;
  std::optional<std::string> delay;
  std::optional<double> md;

  void attach(CLI::App* app, bool required = true) {
    auto* opt = app->add_option("--protocol", name, "flooding, m, t, cd, cdp or delay")
                    ->check(CLI::IsMember({"flooding", "m", "t", "cd", "cdp", "delay"}));
    if (required) opt->required();
    app->add_option("--M", m, "M heuristic: copies heard before giving up");
    app->add_option("--T", t, "T heuristic: distance threshold");
    app->add_option("--cancel", cancel, "delay protocol cancel rule: dup or closer");
    app->add_option("--delay", delay, "delay function: d1..d4");
    app->add_option("--md", md, "maximum delay MD (default r)");
  }

  ProtocolConfig config() const { return make_protocol({name, m, t, cancel, delay, md}); }
};

struct ScenarioFlags {
  int n = 0;
  int k = 1;
  bool unbounded = false;
  std::optional<int> radius;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "number of nodes, source 1 and target n")->required();
    app->add_option("--k", k, "number of messages");
    auto* u = app->add_flag("--unbounded", unbounded, "every node hears every other node");
    auto* r = app->add_option("--radius", radius, "bounded reach radius r");
    u->excludes(r);
    r->excludes(u);
  }

  Scenario scenario() const {
    if (!unbounded && !radius) throw std::invalid_argument("give either --unbounded or --radius");
    Scenario sc = radius ? Scenario::bounded(n, *radius, k) : Scenario::unbounded(n, k);
    sc.validate();
    return sc;
  }
};

ActivationSource source_for(const ProtocolConfig& p, const std::string& schedule, std::uint64_t seed) {
  if (p.is<protocol::DelayBased>()) return activation::DelayDriven{seed};
  return parse_activation_source(schedule, seed);
}

json run_to_json(const Scenario& sc, const ProtocolConfig& p, const ActivationSource& src,
                 const RunResult& r) {
  json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["protocol"] = p.name();
  doc["scenario"] = sc.describe();
  doc["schedule"] = describe(src);
  doc["rec_mess"] = r.rec_mess;
  doc["transmissions"] = r.transmissions_total;
  doc["activations"] = r.activations;
  doc["per_node_receptions"] = r.per_node_receptions;
  doc["per_node_transmissions"] = r.per_node_transmissions;
  doc["delivered_all"] = r.delivered_all;
  doc["per_message_delivered"] = r.per_message_delivered;
  doc["terminated"] = r.terminated;
  doc["schedule_exhausted"] = r.schedule_exhausted;
  if (p.is<protocol::DelayBased>()) doc["end_time"] = r.end_time;
  return doc;
}

struct SampleStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};

SampleStats stats(const std::vector<double>& v) {
  SampleStats s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - s.mean) * (x - s.mean);
  if (v.size() > 1) s.stderr_ = std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"1D beaconless geocast simulator and verification harness", "geocast"};
  app.require_subcommand(1);
  int status = kExitOk;

  // run
  auto* run_cmd = app.add_subcommand("run", "execute one run and print its result as JSON");
  ProtocolFlags run_p;
  ScenarioFlags run_s;
  std::string run_schedule = "fair";
  std::uint64_t run_seed = 1;
  std::optional<std::int64_t> run_cap;
  run_p.attach(run_cmd);
  run_s.attach(run_cmd);
  run_cmd->add_option("--schedule", run_schedule, "fair, ltr, near-target or explicit:3,2,5");
  run_cmd->add_option("--seed", run_seed);
  run_cmd->add_option("--max-activations", run_cap);
  run_cmd->callback([&] {
    const Scenario sc = run_s.scenario();
    const ProtocolConfig p = run_p.config();
    const ActivationSource src = source_for(p, run_schedule, run_seed);
    const RunResult r = run(sc, p, src, RunLimits{run_cap});
    out << run_to_json(sc, p, src, r).dump(2) << '\n';
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over (n, k, r)");
  std::optional<std::string> sweep_config;
  ProtocolFlags sweep_p;
  std::optional<std::string> sweep_n, sweep_k, sweep_r, sweep_metric, sweep_schedule;
  std::optional<int> sweep_trials, sweep_jobs;
  std::optional<std::uint64_t> sweep_seed;
  bool sweep_unbounded = false;
  std::string sweep_format = "csv";
  std::optional<std::string> sweep_out;
  sweep_cmd->add_option("--config", sweep_config, "key = value file; flags override it")
      ->check(CLI::ExistingFile);
  sweep_p.attach(sweep_cmd, false);
  sweep_cmd->add_option("--n", sweep_n, "comma-separated node counts");
  sweep_cmd->add_option("--k", sweep_k, "comma-separated message counts");
  sweep_cmd->add_option("--radius", sweep_r, "comma-separated radii (bounded scenario)");
  sweep_cmd->add_flag("--unbounded", sweep_unbounded);
  sweep_cmd->add_option("--metric", sweep_metric, "rec_mess, transmissions or activations");
  sweep_cmd->add_option("--schedule", sweep_schedule);
  sweep_cmd->add_option("--trials", sweep_trials);
  sweep_cmd->add_option("--seed", sweep_seed);
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads");
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--out", sweep_out, "output file (default stdout)");
  sweep_cmd->callback([&] {
    std::map<std::string, std::string> config;
    if (sweep_config) {
      std::ifstream in(*sweep_config);
      config = parse_key_value_config(in);
    }
    auto set = [&](const char* key, const auto& value) {
      if (!value) return;
      std::ostringstream s;
      s << *value;
      config[key] = s.str();
    };
    if (!sweep_p.name.empty()) {
      // Protocol flags replace the file's protocol section wholesale.
      for (const char* key : {"protocol", "M", "T", "cancel", "delay", "md"}) config.erase(key);
      config["protocol"] = sweep_p.name;
    }
    set("M", sweep_p.m);
    set("T", sweep_p.t);
    set("cancel", sweep_p.cancel);
    set("delay", sweep_p.delay);
    set("md", sweep_p.md);
    set("n", sweep_n);
    set("k", sweep_k);
    if (sweep_r) {
      config["r"] = *sweep_r;
      config["scenario"] = "bounded";
    }
    if (sweep_unbounded) {
      config.erase("r");
      config["scenario"] = "unbounded";
    }
    set("metric", sweep_metric);
    set("schedule", sweep_schedule);
    set("trials", sweep_trials);
    set("seed", sweep_seed);
    set("jobs", sweep_jobs);
    const ExperimentSpec spec = spec_from_config(config);
    const SweepTable table = run_sweep(spec);
    std::optional<FitReport> fit;
    if (const ReferenceFn ref = table2_reference_fn(spec)) fit = ratio_stability(table, ref);

    std::ofstream file;
    if (sweep_out) {
      file.open(*sweep_out);
      if (!file) throw std::invalid_argument("cannot write " + *sweep_out);
    }
    std::ostream& sink = sweep_out ? static_cast<std::ostream&>(file) : out;
    if (sweep_format == "json")
      write_json(sink, table, fit ? &*fit : nullptr);
    else
      write_csv(sink, table, fit ? &*fit : nullptr);
  });

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "every activation order versus the worst-case bounds");
  ProtocolFlags enum_p;
  ScenarioFlags enum_s;
  std::int64_t enum_cap = 10'000'000;
  enum_p.attach(enum_cmd);
  enum_s.attach(enum_cmd);
  enum_cmd->add_option("--cap", enum_cap, "maximum number of complete runs");
  enum_cmd->callback([&] {
    const Scenario sc = enum_s.scenario();
    const ProtocolConfig p = enum_p.config();
    const auto bounds = table1_bounds(p, sc);
    if (!bounds) throw std::invalid_argument("no worst-case bounds for " + p.name());
    const oracles::EnumerationResult e = oracles::enumerate_runs(sc, p, enum_cap);
    const bool ok = e.complete && table1_conforms(p, sc, e.min_rec_mess, e.max_rec_mess);
    json doc = {{"protocol", p.name()},
                {"scenario", sc.describe()},
                {"runs", e.runs},
                {"complete", e.complete},
                {"min_rec_mess", e.min_rec_mess},
                {"max_rec_mess", e.max_rec_mess},
                {"every_run_delivered", e.every_run_delivered},
                {"bound_lower", bounds->lower},
                {"bound_upper", bounds->upper},
                {"bound_exact", bounds->exact},
                {"conforms", ok}};
    out << doc.dump(2) << '\n';
    if (!ok) status = kExitViolation;
  });

  // verify-bounds
  auto* verify_cmd = app.add_subcommand("verify-bounds", "run the acceptance suite");
  std::vector<int> verify_ids;
  acceptance::Options verify_opts;
  verify_cmd->add_option("--criterion", verify_ids, "run only these criteria");
  verify_cmd->add_option("--seed", verify_opts.seed);
  verify_cmd->add_flag("--verbose", verify_opts.verbose);
  verify_cmd->callback([&] {
    bool ok = true;
    if (verify_ids.empty()) {
      ok = acceptance::run_all(out, verify_opts);
    } else {
      for (int id : verify_ids) {
        const auto r = acceptance::run_criterion(id, verify_opts);
        acceptance::print_result(out, r, verify_opts.verbose);
        if (r.blocking && !r.passed) ok = false;
      }
    }
    if (!ok) status = kExitViolation;
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "stand-alone appendix processes");
  oracle_cmd->require_subcommand(1);
  int o_n = 10;
  int o_k = 1;
  int o_trials = 1000;
  std::uint64_t o_seed = 1;
  std::int64_t o_tmax = 200;
  std::string o_sequence;

  auto* chain_cmd = oracle_cmd->add_subcommand("cdp-chain", "rounds until k counters reach zero");
  auto* grid_cmd = oracle_cmd->add_subcommand("grid-fill", "grid fill completion T and first full column S");
  auto* dom_cmd = oracle_cmd->add_subcommand("dominance", "survival functions of Z, ZU and ZL");
  auto* lnis_cmd = oracle_cmd->add_subcommand("lnis", "longest non-increasing subsequence");
  for (auto* c : {chain_cmd, grid_cmd, dom_cmd}) {
    c->add_option("--n", o_n)->required();
    c->add_option("--trials", o_trials);
    c->add_option("--seed", o_seed);
  }
  chain_cmd->add_option("--k", o_k);
  grid_cmd->add_option("--k", o_k);
  dom_cmd->add_option("--t-max", o_tmax);
  lnis_cmd->add_option("sequence,--sequence", o_sequence, "comma-separated values, e.g. 3,2,5,1")->required();

  chain_cmd->callback([&] {
    if (o_n < 1 || o_k < 1 || o_trials < 1) throw std::invalid_argument("need n, k, trials >= 1");
    SplitMix64 rng(o_seed);
    std::vector<double> v;
    for (int i = 0; i < o_trials; ++i) v.push_back(static_cast<double>(oracles::cdp_chain_run(o_n, o_k, rng)));
    const SampleStats s = stats(v);
    out << json{{"n", o_n}, {"k", o_k}, {"trials", o_trials}, {"mean", s.mean}, {"stderr", s.stderr_}}.dump(2)
        << '\n';
  });
  grid_cmd->callback([&] {
    if (o_n < 1 || o_k < 1 || o_trials < 1) throw std::invalid_argument("need n, k, trials >= 1");
    SplitMix64 rng(o_seed);
    std::vector<double> t, s;
    for (int i = 0; i < o_trials; ++i) {
      const auto g = oracles::grid_fill_run(o_n, o_k, rng);
      t.push_back(static_cast<double>(g.completion));
      s.push_back(static_cast<double>(g.first_full));
    }
    const SampleStats st = stats(t), ss = stats(s);
    out << json{{"n", o_n},           {"k", o_k},           {"trials", o_trials},
                {"mean_T", st.mean},  {"stderr_T", st.stderr_}, {"mean_S", ss.mean},
                {"stderr_S", ss.stderr_}}
               .dump(2)
        << '\n';
  });
  dom_cmd->callback([&] {
    if (o_n < 1 || o_trials < 1 || o_tmax < 1) throw std::invalid_argument("need n, trials, t-max >= 1");
    SplitMix64 rng(o_seed);
    std::vector<std::int64_t> z(o_tmax + 2), zu(o_tmax + 2), zl(o_tmax + 2);
    for (int i = 0; i < o_trials; ++i) {
      const auto d = oracles::dominance_samples(o_n, o_tmax, rng);
      ++z[std::min(d.z, o_tmax + 1)];
      ++zu[std::min(d.z_upper, o_tmax + 1)];
      ++zl[std::min(d.z_lower, o_tmax + 1)];
    }
    out << "t,p_z_gt,p_zu_gt,p_zl_gt\n" << std::setprecision(8);
    double az = o_trials, au = o_trials, al = o_trials;
    for (std::int64_t t = 0; t <= o_tmax; ++t) {
      az -= z[t];
      au -= zu[t];
      al -= zl[t];
      out << t << ',' << az / o_trials << ',' << au / o_trials << ',' << al / o_trials << '\n';
      if (az == 0 && au == 0 && al == 0) break;
    }
  });
  lnis_cmd->callback([&] {
    std::vector<int> seq;
    std::stringstream in(o_sequence);
    for (std::string item; std::getline(in, item, ',');) seq.push_back(std::stoi(item));
    out << oracles::lnis(seq) << '\n';
  });

  // trace
  auto* trace_cmd = app.add_subcommand("trace", "message-grid snapshots after every activation");
  ProtocolFlags trace_p;
  ScenarioFlags trace_s;
  std::string trace_schedule = "fair";
  std::uint64_t trace_seed = 1;
  trace_p.attach(trace_cmd);
  trace_s.attach(trace_cmd);
  trace_cmd->add_option("--schedule", trace_schedule);
  trace_cmd->add_option("--seed", trace_seed);
  trace_cmd->callback([&] {
    const Scenario sc = trace_s.scenario();
    const ProtocolConfig p = trace_p.config();
    if (p.is<protocol::DelayBased>()) throw std::invalid_argument("trace does not support delay protocols");
    out << render_trace(sc, trace(sc, p, parse_activation_source(trace_schedule, trace_seed)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: value out of range: " << e.what() << '\n';
    return kExitUsage;
  }
  return status;
}

}  // namespace geocast
