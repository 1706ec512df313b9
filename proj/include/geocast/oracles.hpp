#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include <boost/rational.hpp>

#include "geocast/engine.hpp"
#include "geocast/model.hpp"
#include "geocast/protocols.hpp"
#include "geocast/random.hpp"

// Stand-alone models of the fair-access processes, plus brute-force
// enumerators. None of these go through the engine's run loop except the
// enumerators, which drive `activate` directly.
namespace geocast::oracles {

// R-chain: k counters start at n; each round the largest (lowest index on
// ties) is replaced by a uniform draw from {0, ..., R - 1}. Returns the
// number of rounds until all counters are zero.
std::int64_t cdp_chain_run(int n, int k, SplitMix64& rng);

// Rounds for a single counter to go from n to zero.
std::int64_t z_single_run(int n, SplitMix64& rng);

struct DominanceSample {
  std::int64_t z = 0;
  std::int64_t z_upper = 0;  // min{t : n U_1 ... U_t < 1}
  std::int64_t z_lower = 0;  // min{t : n U_1 ... U_t < t + 1}
};

// One draw each of Z, ZU and ZL from independent streams. ZU and ZL are
// truncated at t_max + 1.
DominanceSample dominance_samples(int n, std::int64_t t_max, SplitMix64& rng);

// ZU and ZL evaluated on one shared uniform stream.
DominanceSample coupled_product_sample(int n, std::int64_t t_max, SplitMix64& rng);

// W = ln(1/U) with U uniform on (0, 1].
double exponential_from_uniform(SplitMix64& rng);

// Uniform draw of a geometric variable on {1, 2, ...}.
std::int64_t geometric_trials(double success, SplitMix64& rng);

struct GridFillResult {
  std::int64_t completion = 0;   // T: all columns full
  std::int64_t first_full = 0;   // S: some column full
  std::vector<int> selections;   // chosen columns, 1-based
};

struct GridState {
  std::vector<int> fill_heights;  // per column, 0..k
  std::int64_t time = 0;
};

// Applies one selection of column `column` (1-based) to the grid.
void grid_fill_step(GridState& grid, int column, int k);

// n columns of height k; each step picks a uniformly random non-full column
// and fills its lowest empty square and every empty square to its left in
// that row.
GridFillResult grid_fill_run(int n, int k, SplitMix64& rng);

// Longest non-increasing subsequence length.
int lnis(std::span<const int> sequence);

// First prefix length whose LNIS reaches k, or -1 if none does.
std::int64_t first_prefix_with_lnis(std::span<const int> sequence, int k);

struct EnumerationResult {
  std::int64_t min_rec_mess = 0;
  std::int64_t max_rec_mess = 0;
  std::int64_t runs = 0;
  bool complete = true;  // false when the run cap cut the search short
  bool every_run_delivered = true;
};

using TerminalVisitor = std::function<void(const WorldState&, std::span<const NodeIndex> order)>;

// Depth-first search over every activation order from the seeded state.
// `cap` bounds the number of complete runs visited.
EnumerationResult enumerate_runs(const Scenario& scenario, const ProtocolConfig& protocol,
                                 std::int64_t cap = 10'000'000,
                                 const TerminalVisitor& visitor = {});

using Probability = boost::rational<std::int64_t>;
// Exact distribution of the completion time: time -> probability.
using Distribution = std::map<std::int64_t, Probability>;

// Engine under fair medium access, activations until every queue is empty.
Distribution engine_completion_distribution(const Scenario& scenario,
                                            const ProtocolConfig& protocol);
Distribution grid_fill_distribution(int columns, int k);
Distribution cdp_chain_distribution(int n, int k);
// Same chain, reducing message 1 to zero before touching message 2, and so on.
Distribution cdp_chain_sequential_distribution(int n, int k);

Probability max_gap(const Distribution& a, const Distribution& b);

enum class ProcessPair { CdVersusGridFill, CdpVersusChain };

// Compares the engine with `engine_n` nodes (relays 2..n-1) against the
// abstract process on n - 2 columns.
Probability exact_distribution_equivalence(ProcessPair pair, int engine_n, int k);

}  // namespace geocast::oracles
