#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace geocast {

// Nodes are numbered 1..n from left to right, messages 1..k.
using NodeIndex = int;
using MessageId = int;

inline constexpr int kInfiniteDistance = std::numeric_limits<int>::max();

// Communication reach: every other node (unbounded) or nodes within radius r.
class Reach {
 public:
  static Reach unbounded() { return Reach{}; }
  static Reach bounded(int radius) { return Reach{radius}; }

  bool is_bounded() const { return radius_.has_value(); }
  int radius() const { return radius_.value(); }

  bool operator==(const Reach&) const = default;

 private:
  Reach() = default;
  explicit Reach(int radius) : radius_(radius) {}
  std::optional<int> radius_;
};

// The leftmost node sends k messages towards the rightmost node.
struct Scenario {
  int n = 2;
  Reach reach = Reach::unbounded();
  int k = 1;

  static Scenario unbounded(int n, int k) { return {n, Reach::unbounded(), k}; }
  static Scenario bounded(int n, int radius, int k) { return {n, Reach::bounded(radius), k}; }

  NodeIndex source() const { return 1; }
  NodeIndex target() const { return n; }

  int distance_to_target(NodeIndex i) const { return n - i; }
  bool in_reach(NodeIndex from, NodeIndex to) const;

  // Throws std::invalid_argument when n < 2, k < 1 or a bounded radius < 1.
  void validate() const;
  std::string describe() const;
};

int distance(NodeIndex a, NodeIndex b);

// Per-(node, message) bookkeeping. Counters only see transmissions made
// during a run; the source's initial broadcast is represented by `seeded`.
struct MessageRecord {
  int heard_count = 0;
  int min_transmitter_dist = kInfiniteDistance;
  int best_originator_dist = 0;  // n - 1 until a copy is heard
  bool recorded = false;
  bool seeded = false;
  bool queued = false;
  bool transmitted = false;
};

struct NodeState {
  NodeIndex index = 0;
  std::vector<MessageId> queue;        // FIFO enqueue order
  std::vector<MessageRecord> records;  // records[m - 1]
  std::int64_t receptions_total = 0;
  int transmissions = 0;

  const MessageRecord& record(MessageId m) const { return records[m - 1]; }
  MessageRecord& record(MessageId m) { return records[m - 1]; }
};

struct Transmission {
  NodeIndex sender = 0;
  MessageId message = 0;
  double time = 0.0;
};

// Order-statistics set over node indices (Fenwick tree), used to sample the
// active nodes by rank so that a draw depends only on the set's contents.
class NodeSet {
 public:
  explicit NodeSet(int n = 0);

  void insert(NodeIndex i);
  void erase(NodeIndex i);
  bool contains(NodeIndex i) const { return member_[i] != 0; }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // The rank-th smallest member, rank in [0, size()).
  NodeIndex nth(int rank) const;
  NodeIndex first() const { return nth(0); }
  NodeIndex last() const { return nth(size_ - 1); }
  std::vector<NodeIndex> members() const;

 private:
  void add(NodeIndex i, int delta);

  int n_ = 0;
  int size_ = 0;
  int top_bit_ = 0;
  std::vector<int> tree_;
  std::vector<char> member_;
};

class WorldState {
 public:
  WorldState() = default;
  explicit WorldState(const Scenario& scenario);

  const Scenario& scenario() const { return scenario_; }
  const NodeState& node(NodeIndex i) const { return nodes_[i - 1]; }
  NodeState& node(NodeIndex i) { return nodes_[i - 1]; }
  const std::vector<NodeState>& nodes() const { return nodes_; }

  const std::vector<Transmission>& log() const { return log_; }
  bool delivered(MessageId m) const { return delivered_[m - 1] != 0; }
  bool all_delivered() const;

  // Nodes other than the target whose queue is non-empty.
  const NodeSet& active() const { return active_; }
  std::int64_t queued_total() const { return queued_total_; }

  void enqueue(NodeIndex i, MessageId m);
  void dequeue(NodeIndex i, MessageId m);
  void mark_delivered(MessageId m) { delivered_[m - 1] = 1; }
  void record_transmission(const Transmission& t);

 private:
  Scenario scenario_;
  std::vector<NodeState> nodes_;
  std::vector<Transmission> log_;
  std::vector<char> delivered_;
  NodeSet active_;
  std::int64_t queued_total_ = 0;
};

// Nodes that hear a transmission from `sender`, in increasing index order.
std::vector<NodeIndex> reachable_set(const Scenario& scenario, NodeIndex sender);

// State right after the source broadcast all k messages: every node in reach
// of the source, except the target, queues 1..k. No counter is touched.
WorldState seed_initial_state(const Scenario& scenario);

struct ProtocolConfig;

// Optional side channel for callers that need to know which queues changed.
struct ReceptionEffects {
  std::vector<NodeIndex> enqueued;
  std::vector<NodeIndex> deleted;
};

// Delivers `transmission` to every node in reach of its sender: counters,
// records, enqueueing of new IDs and the protocol's eager deletion. The
// transmission is appended to the world's log.
void apply_reception(WorldState& world, const Transmission& transmission,
                     const ProtocolConfig& protocol, ReceptionEffects* effects = nullptr);

}  // namespace geocast
