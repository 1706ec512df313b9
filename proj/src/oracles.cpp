#include "geocast/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geocast::oracles {

std::int64_t cdp_chain_run(int n, int k, SplitMix64& rng) {
  if (n < 1 || k < 1) throw std::invalid_argument("cdp chain needs n >= 1, k >= 1");
  std::vector<std::int64_t> remaining(k, n);
  std::int64_t rounds = 0;
  while (true) {
    const auto it = std::max_element(remaining.begin(), remaining.end());
    if (*it == 0) return rounds;
    *it = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(*it)));
    ++rounds;
  }
}

std::int64_t z_single_run(int n, SplitMix64& rng) { return cdp_chain_run(n, 1, rng); }

double exponential_from_uniform(SplitMix64& rng) { return -std::log(1.0 - rng.uniform()); }

std::int64_t geometric_trials(double success, SplitMix64& rng) {
  if (success >= 1.0) return 1;
  // Inversion: ceil(ln U / ln(1 - p)) is geometric on {1, 2, ...}.
  const double u = 1.0 - rng.uniform();
  const auto trials = static_cast<std::int64_t>(std::ceil(std::log(u) / std::log1p(-success)));
  return std::max<std::int64_t>(1, trials);
}

namespace {

// Smallest t >= 1 with log(n) - (W_1 + ... + W_t) < log(threshold(t)).
template <typename Threshold>
std::int64_t product_hitting_time(int n, std::int64_t t_max, SplitMix64& rng,
                                  Threshold threshold) {
  double log_v = std::log(static_cast<double>(n));
  for (std::int64_t t = 1; t <= t_max; ++t) {
    log_v -= exponential_from_uniform(rng);
    if (log_v < std::log(threshold(t))) return t;
  }
  return t_max + 1;
}

}  // namespace

DominanceSample dominance_samples(int n, std::int64_t t_max, SplitMix64& rng) {
  if (n < 2) throw std::invalid_argument("dominance samples need n >= 2");
  DominanceSample s;
  s.z = z_single_run(n, rng);
  SplitMix64 upper_stream(rng());
  SplitMix64 lower_stream(rng());
  s.z_upper = product_hitting_time(n, t_max, upper_stream, [](std::int64_t) { return 1.0; });
  s.z_lower = product_hitting_time(n, t_max, lower_stream,
                                   [](std::int64_t t) { return static_cast<double>(t + 1); });
  return s;
}

DominanceSample coupled_product_sample(int n, std::int64_t t_max, SplitMix64& rng) {
  DominanceSample s;
  s.z = 0;
  double log_v = std::log(static_cast<double>(n));
  s.z_upper = t_max + 1;
  s.z_lower = t_max + 1;
  for (std::int64_t t = 1; t <= t_max; ++t) {
    log_v -= exponential_from_uniform(rng);
    if (s.z_lower > t_max && log_v < std::log(static_cast<double>(t + 1))) s.z_lower = t;
    if (log_v < 0.0) {
      s.z_upper = t;
      break;
    }
  }
  return s;
}

void grid_fill_step(GridState& grid, int column, int k) {
  auto& h = grid.fill_heights;
  if (column < 1 || column > static_cast<int>(h.size()) || h[column - 1] >= k)
    throw std::invalid_argument("grid_fill_step on a full or missing column");
  // Heights are non-increasing left to right, so filling the row at
  // h[column] + 1 lifts every column to the left to at least that height.
  const int row = h[column - 1] + 1;
  for (int j = 0; j < column; ++j) h[j] = std::max(h[j], row);
  ++grid.time;
}

GridFillResult grid_fill_run(int n, int k, SplitMix64& rng) {
  if (n < 1 || k < 1) throw std::invalid_argument("grid fill needs n >= 1, k >= 1");
  GridState grid{std::vector<int>(n, 0), 0};
  GridFillResult out;
  // Non-full columns always form a suffix, since heights are non-increasing.
  int first_open = 1;
  while (first_open <= n) {
    const int open = n - first_open + 1;
    const int column = first_open + static_cast<int>(rng.below(open));
    grid_fill_step(grid, column, k);
    out.selections.push_back(column);
    while (first_open <= n && grid.fill_heights[first_open - 1] == k) {
      if (out.first_full == 0) out.first_full = grid.time;
      ++first_open;
    }
  }
  out.completion = grid.time;
  return out;
}

int lnis(std::span<const int> sequence) {
  // Patience piles on the negated values: a non-increasing run in x is a
  // non-decreasing run in -x, so ties extend (upper_bound).
  std::vector<int> tails;
  for (int x : sequence) {
    const int y = -x;
    const auto it = std::upper_bound(tails.begin(), tails.end(), y);
    if (it == tails.end())
      tails.push_back(y);
    else
      *it = y;
  }
  return static_cast<int>(tails.size());
}

std::int64_t first_prefix_with_lnis(std::span<const int> sequence, int k) {
  std::vector<int> tails;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const int y = -sequence[i];
    const auto it = std::upper_bound(tails.begin(), tails.end(), y);
    if (it == tails.end())
      tails.push_back(y);
    else
      *it = y;
    if (static_cast<int>(tails.size()) >= k) return static_cast<std::int64_t>(i) + 1;
  }
  return -1;
}

namespace {

struct Enumerator {
  const ProtocolConfig& protocol;
  std::int64_t cap;
  const TerminalVisitor& visitor;
  EnumerationResult result;
  std::vector<NodeIndex> order;
  bool first = true;

  void dfs(const WorldState& world) {
    if (!result.complete) return;
    if (world.active().empty()) {
      if (result.runs >= cap) {
        result.complete = false;
        return;
      }
      const RunResult r = summarize(world);
      if (first) {
        result.min_rec_mess = result.max_rec_mess = r.rec_mess;
        first = false;
      }
      result.min_rec_mess = std::min(result.min_rec_mess, r.rec_mess);
      result.max_rec_mess = std::max(result.max_rec_mess, r.rec_mess);
      result.every_run_delivered = result.every_run_delivered && r.delivered_all;
      if (visitor) visitor(world, order);
      ++result.runs;
      return;
    }
    for (NodeIndex node : world.active().members()) {
      WorldState next = world;
      activate(next, protocol, node);
      order.push_back(node);
      dfs(next);
      order.pop_back();
      if (!result.complete) return;
    }
  }
};

}  // namespace

EnumerationResult enumerate_runs(const Scenario& scenario, const ProtocolConfig& protocol,
                                 std::int64_t cap, const TerminalVisitor& visitor) {
  if (protocol.is<protocol::DelayBased>())
    throw std::invalid_argument("delay-based protocols fix their own activation order");
  protocol.validate();
  Enumerator e{protocol, cap, visitor, {}, {}, true};
  e.dfs(seed_initial_state(scenario));
  return e.result;
}

namespace {

void add(Distribution& d, std::int64_t t, const Probability& p) {
  auto [it, inserted] = d.emplace(t, p);
  if (!inserted) it->second += p;
}

void engine_tree(const WorldState& world, const ProtocolConfig& protocol, std::int64_t depth,
                 const Probability& weight, Distribution& out) {
  const NodeSet& active = world.active();
  if (active.empty()) {
    add(out, depth, weight);
    return;
  }
  const Probability branch = weight / Probability(active.size());
  for (NodeIndex node : active.members()) {
    WorldState next = world;
    activate(next, protocol, node);
    engine_tree(next, protocol, depth + 1, branch, out);
  }
}

void grid_tree(const GridState& grid, int k, const Probability& weight, Distribution& out) {
  std::vector<int> open;
  for (int c = 1; c <= static_cast<int>(grid.fill_heights.size()); ++c)
    if (grid.fill_heights[c - 1] < k) open.push_back(c);
  if (open.empty()) {
    add(out, grid.time, weight);
    return;
  }
  const Probability branch = weight / Probability(static_cast<std::int64_t>(open.size()));
  for (int c : open) {
    GridState next = grid;
    grid_fill_step(next, c, k);
    grid_tree(next, k, branch, out);
  }
}

void chain_tree(std::vector<int> remaining, std::int64_t rounds, const Probability& weight,
                Distribution& out) {
  const auto it = std::max_element(remaining.begin(), remaining.end());
  if (*it == 0) {
    add(out, rounds, weight);
    return;
  }
  const int r = *it;
  const auto index = it - remaining.begin();
  const Probability branch = weight / Probability(r);
  for (int v = 0; v < r; ++v) {
    remaining[index] = v;
    chain_tree(remaining, rounds + 1, branch, out);
  }
}

Distribution single_counter_distribution(int n) {
  Distribution d;
  chain_tree(std::vector<int>{n}, 0, Probability(1), d);
  return d;
}

Distribution convolve(const Distribution& a, const Distribution& b) {
  Distribution out;
  for (const auto& [ta, pa] : a)
    for (const auto& [tb, pb] : b) add(out, ta + tb, pa * pb);
  return out;
}

}  // namespace

Distribution engine_completion_distribution(const Scenario& scenario,
                                            const ProtocolConfig& protocol) {
  if (protocol.is<protocol::DelayBased>())
    throw std::invalid_argument("fair-access trees need a non-delay protocol");
  Distribution out;
  engine_tree(seed_initial_state(scenario), protocol, 0, Probability(1), out);
  return out;
}

Distribution grid_fill_distribution(int columns, int k) {
  Distribution out;
  if (columns == 0) {
    out[0] = Probability(1);
    return out;
  }
  grid_tree(GridState{std::vector<int>(columns, 0), 0}, k, Probability(1), out);
  return out;
}

Distribution cdp_chain_distribution(int n, int k) {
  Distribution out;
  chain_tree(std::vector<int>(k, n), 0, Probability(1), out);
  return out;
}

Distribution cdp_chain_sequential_distribution(int n, int k) {
  const Distribution single = single_counter_distribution(n);
  Distribution out{{0, Probability(1)}};
  for (int i = 0; i < k; ++i) out = convolve(out, single);
  return out;
}

Probability max_gap(const Distribution& a, const Distribution& b) {
  Probability gap(0);
  auto probe = [&](std::int64_t t) {
    const auto ia = a.find(t);
    const auto ib = b.find(t);
    const Probability pa = ia == a.end() ? Probability(0) : ia->second;
    const Probability pb = ib == b.end() ? Probability(0) : ib->second;
    gap = std::max(gap, boost::abs(pa - pb));
  };
  for (const auto& entry : a) probe(entry.first);
  for (const auto& entry : b) probe(entry.first);
  return gap;
}

Probability exact_distribution_equivalence(ProcessPair pair, int engine_n, int k) {
  if (engine_n < 2 || k < 1) throw std::invalid_argument("equivalence needs n >= 2, k >= 1");
  if (engine_n - 2 > 3 || k > 3)
    throw std::invalid_argument("exact trees are limited to 3 relays and k <= 3");
  const Scenario scenario = Scenario::unbounded(engine_n, k);
  const int columns = engine_n - 2;
  if (pair == ProcessPair::CdVersusGridFill) {
    return max_gap(engine_completion_distribution(scenario, ProtocolConfig::cd()),
                   grid_fill_distribution(columns, k));
  }
  const Distribution chain =
      columns == 0 ? Distribution{{0, Probability(1)}} : cdp_chain_distribution(columns, k);
  return max_gap(engine_completion_distribution(scenario, ProtocolConfig::cdp()), chain);
}

}  // namespace geocast::oracles
