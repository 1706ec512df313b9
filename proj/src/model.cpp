#include "geocast/model.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "geocast/protocols.hpp"

namespace geocast {

int distance(NodeIndex a, NodeIndex b) { return a > b ? a - b : b - a; }

bool Scenario::in_reach(NodeIndex from, NodeIndex to) const {
  if (from == to) return false;
  return !reach.is_bounded() || distance(from, to) <= reach.radius();
}

void Scenario::validate() const {
  if (n < 2) throw std::invalid_argument("scenario needs n >= 2 nodes");
  if (k < 1) throw std::invalid_argument("scenario needs k >= 1 messages");
  if (reach.is_bounded() && reach.radius() < 1)
    throw std::invalid_argument("bounded reach needs radius r >= 1");
}

std::string Scenario::describe() const {
  std::ostringstream out;
  out << "n=" << n << " k=" << k;
  if (reach.is_bounded())
    out << " r=" << reach.radius();
  else
    out << " unbounded";
  return out.str();
}

NodeSet::NodeSet(int n)
    : n_(n), top_bit_(n > 0 ? static_cast<int>(std::bit_floor(static_cast<unsigned>(n))) : 0),
      tree_(n + 1, 0), member_(n + 1, 0) {}

void NodeSet::add(NodeIndex i, int delta) {
  for (; i <= n_; i += i & -i) tree_[i] += delta;
}

void NodeSet::insert(NodeIndex i) {
  if (member_[i]) return;
  member_[i] = 1;
  ++size_;
  add(i, 1);
}

void NodeSet::erase(NodeIndex i) {
  if (!member_[i]) return;
  member_[i] = 0;
  --size_;
  add(i, -1);
}

NodeIndex NodeSet::nth(int rank) const {
  if (rank < 0 || rank >= size_) throw std::out_of_range("NodeSet::nth");
  int pos = 0;
  int remaining = rank + 1;
  for (int step = top_bit_; step > 0; step >>= 1) {
    const int next = pos + step;
    if (next <= n_ && tree_[next] < remaining) {
      pos = next;
      remaining -= tree_[next];
    }
  }
  return pos + 1;
}

std::vector<NodeIndex> NodeSet::members() const {
  std::vector<NodeIndex> out;
  out.reserve(size_);
  for (NodeIndex i = 1; i <= n_; ++i)
    if (member_[i]) out.push_back(i);
  return out;
}

WorldState::WorldState(const Scenario& scenario)
    : scenario_(scenario), delivered_(scenario.k, 0), active_(scenario.n) {
  scenario.validate();
  nodes_.resize(scenario.n);
  for (NodeIndex i = 1; i <= scenario.n; ++i) {
    NodeState& s = nodes_[i - 1];
    s.index = i;
    s.records.assign(scenario.k, MessageRecord{});
    for (auto& r : s.records) r.best_originator_dist = scenario.n - 1;
  }
}

bool WorldState::all_delivered() const {
  return std::all_of(delivered_.begin(), delivered_.end(), [](char d) { return d != 0; });
}

void WorldState::enqueue(NodeIndex i, MessageId m) {
  NodeState& s = node(i);
  MessageRecord& rec = s.record(m);
  if (rec.queued) return;
  rec.queued = true;
  s.queue.push_back(m);
  ++queued_total_;
  if (i != scenario_.target()) active_.insert(i);
}

void WorldState::dequeue(NodeIndex i, MessageId m) {
  NodeState& s = node(i);
  MessageRecord& rec = s.record(m);
  if (!rec.queued) return;
  rec.queued = false;
  s.queue.erase(std::find(s.queue.begin(), s.queue.end(), m));
  --queued_total_;
  if (s.queue.empty()) active_.erase(i);
}

void WorldState::record_transmission(const Transmission& t) {
  log_.push_back(t);
  NodeState& s = node(t.sender);
  ++s.transmissions;
  s.record(t.message).transmitted = true;
}

std::vector<NodeIndex> reachable_set(const Scenario& scenario, NodeIndex sender) {
  std::vector<NodeIndex> out;
  NodeIndex lo = 1;
  NodeIndex hi = scenario.n;
  if (scenario.reach.is_bounded()) {
    lo = std::max(1, sender - scenario.reach.radius());
    hi = std::min(scenario.n, sender + scenario.reach.radius());
  }
  for (NodeIndex j = lo; j <= hi; ++j)
    if (j != sender) out.push_back(j);
  return out;
}

WorldState seed_initial_state(const Scenario& scenario) {
  WorldState world(scenario);
  const NodeIndex source = scenario.source();
  for (MessageId m = 1; m <= scenario.k; ++m) {
    MessageRecord& own = world.node(source).record(m);
    own.recorded = true;
    own.transmitted = true;
  }
  for (NodeIndex j : reachable_set(scenario, source)) {
    for (MessageId m = 1; m <= scenario.k; ++m) {
      MessageRecord& rec = world.node(j).record(m);
      rec.recorded = true;
      rec.seeded = true;
      if (j == scenario.target())
        world.mark_delivered(m);
      else
        world.enqueue(j, m);
    }
  }
  return world;
}

void apply_reception(WorldState& world, const Transmission& transmission,
                     const ProtocolConfig& protocol, ReceptionEffects* effects) {
  const Scenario& sc = world.scenario();
  const NodeIndex sender = transmission.sender;
  const MessageId m = transmission.message;
  const int sender_progress = sc.distance_to_target(sender);

  world.record_transmission(transmission);

  NodeIndex lo = 1;
  NodeIndex hi = sc.n;
  if (sc.reach.is_bounded()) {
    lo = std::max(1, sender - sc.reach.radius());
    hi = std::min(sc.n, sender + sc.reach.radius());
  }
  for (NodeIndex j = lo; j <= hi; ++j) {
    if (j == sender) continue;
    NodeState& receiver = world.node(j);
    MessageRecord& rec = receiver.record(m);
    ++receiver.receptions_total;
    ++rec.heard_count;
    rec.min_transmitter_dist = std::min(rec.min_transmitter_dist, distance(j, sender));
    rec.best_originator_dist = std::min(rec.best_originator_dist, sender_progress);

    if (j == sc.target()) {
      rec.recorded = true;
      world.mark_delivered(m);
      continue;
    }
    if (!rec.recorded) {
      rec.recorded = true;
      world.enqueue(j, m);
      if (effects) effects->enqueued.push_back(j);
    }
    if (rec.queued && eager_delete_on_reception(protocol, j, transmission, world)) {
      world.dequeue(j, m);
      if (effects) effects->deleted.push_back(j);
    }
  }
}

}  // namespace geocast
