#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geocast/model.hpp"
#include "geocast/protocols.hpp"
#include "geocast/random.hpp"

namespace geocast {

namespace activation {

struct Explicit {
  std::vector<NodeIndex> sequence;
};

// Fair medium access: uniform over nodes with a non-empty queue.
struct FairUniform {
  std::uint64_t seed = 0;
};

struct LeftToRight {};
struct NearTargetFirst {};

// Delay-based protocols; the order comes from the timers, ties by (node, ID).
struct DelayDriven {
  std::uint64_t seed = 0;
};

}  // namespace activation

using ActivationSource =
    std::variant<activation::Explicit, activation::FairUniform, activation::LeftToRight,
                 activation::NearTargetFirst, activation::DelayDriven>;

std::string describe(const ActivationSource& source);

// Parses "fair", "ltr", "near-target", "delay" or "explicit:3,2,5".
ActivationSource parse_activation_source(const std::string& text, std::uint64_t seed);

// Comma-separated node list, e.g. "3,2,5,1". Throws std::invalid_argument.
std::vector<int> parse_index_list(const std::string& text);

// Per-run cursor over an activation source (not for DelayDriven).
class Activator {
 public:
  explicit Activator(ActivationSource source);

  // Next node to activate, or nullopt when the run is over. An explicit
  // sequence skips entries whose queue is empty.
  std::optional<NodeIndex> next_active(const WorldState& world);

  // Explicit sequence ran out while some queue was still non-empty.
  bool exhausted() const { return exhausted_; }
  int skipped() const { return skipped_; }

 private:
  ActivationSource source_;
  SplitMix64 rng_;
  std::size_t cursor_ = 0;
  bool exhausted_ = false;
  int skipped_ = 0;
};

// Delay functions in 1D (d = 0). `progress` is p, `own_dist` is x and
// `prev_dist` is the previous hop's distance to the target. Negative values
// clamp to zero.
double delay_value(DelayKind kind, double max_delay, double radius, double progress,
                   double lateral, double own_dist, double prev_dist);

struct PendingEvent {
  double fire_time = 0.0;
  NodeIndex node = 0;
  MessageId message = 0;

  auto operator<=>(const PendingEvent&) const = default;
};

// Time-ordered pending retransmissions, at most one per (node, ID).
class EventQueue {
 public:
  // Returns false if (node, message) already has a pending entry.
  bool schedule(const PendingEvent& event);
  bool cancel(NodeIndex node, MessageId message);
  std::optional<PendingEvent> pop();
  bool contains(NodeIndex node, MessageId message) const;
  bool empty() const { return pending_.empty(); }
  std::size_t size() const { return pending_.size(); }

 private:
  std::set<PendingEvent> pending_;
  std::map<std::pair<NodeIndex, MessageId>, double> index_;
};

// Effective range used by the delay functions: r, or n - 1 when unbounded.
double nominal_radius(const Scenario& scenario);
double effective_max_delay(const protocol::DelayBased& config, const Scenario& scenario);

// Timers for every node that currently queues a message after seeding.
void schedule_seeded(const WorldState& world, const protocol::DelayBased& config,
                     EventQueue& events);

// Fires the earliest event that is still queued at its node. Messages that
// fail the transmit check are discarded (counted in *discards). Returns the
// emitted transmission, or nullopt once no event is left.
std::optional<Transmission> delay_step(WorldState& world, const ProtocolConfig& protocol,
                                       EventQueue& events, int* discards = nullptr);

}  // namespace geocast
