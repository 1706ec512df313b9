#include "geocast/protocols.hpp"

#include <stdexcept>

namespace geocast {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// Copies of the ID the node holds evidence of, counting the source's
// broadcast for seeded nodes. A duplicate is any copy past the first.
int copies_received(const MessageRecord& rec) { return rec.heard_count + (rec.seeded ? 1 : 0); }

bool closer_than_all_originators(NodeIndex node, const MessageRecord& rec, const Scenario& sc) {
  return sc.distance_to_target(node) < rec.best_originator_dist;
}

}  // namespace

void ProtocolConfig::validate() const {
  std::visit(overloaded{
                 [](const protocol::MHeuristic& p) {
                   if (p.limit <= 1) throw std::invalid_argument("M heuristic needs M > 1");
                 },
                 [](const protocol::THeuristic& p) {
                   if (p.threshold < 1) throw std::invalid_argument("T heuristic needs T >= 1");
                 },
                 [](const protocol::DelayBased& p) {
                   if (p.max_delay && !(*p.max_delay > 0.0))
                     throw std::invalid_argument("maximum delay MD must be positive");
                 },
                 [](const auto&) {},
             },
             kind);
}

std::string to_string(CancelRule rule) {
  return rule == CancelRule::OnDuplicate ? "dup" : "closer";
}

std::string to_string(DelayKind kind) {
  switch (kind) {
    case DelayKind::D1: return "d1";
    case DelayKind::D2: return "d2";
    case DelayKind::D3: return "d3";
    case DelayKind::D4: return "d4";
  }
  return "d?";
}

ProtocolConfig make_protocol(const ProtocolOptions& o) {
  const std::string& name = o.name;
  auto reject = [&](bool present, const char* flag) {
    if (present) throw std::invalid_argument(std::string(flag) + " does not apply to protocol '" + name + "'");
  };
  if (name != "m") reject(o.m_limit.has_value(), "--M");
  if (name != "t") reject(o.t_threshold.has_value(), "--T");
  if (name != "delay") {
    reject(o.cancel.has_value(), "--cancel");
    reject(o.delay.has_value(), "--delay");
    reject(o.max_delay.has_value(), "--md");
  }

  ProtocolConfig config;
  if (name == "flooding") {
    config = ProtocolConfig::flooding();
  } else if (name == "m") {
    if (!o.m_limit) throw std::invalid_argument("protocol 'm' needs --M");
    config = ProtocolConfig::m_heuristic(*o.m_limit);
  } else if (name == "t") {
    if (!o.t_threshold) throw std::invalid_argument("protocol 't' needs --T");
    config = ProtocolConfig::t_heuristic(*o.t_threshold);
  } else if (name == "cd") {
    config = ProtocolConfig::cd();
  } else if (name == "cdp") {
    config = ProtocolConfig::cdp();
  } else if (name == "delay") {
    if (!o.cancel || !o.delay) throw std::invalid_argument("protocol 'delay' needs --cancel and --delay");
    CancelRule cancel;
    if (*o.cancel == "dup")
      cancel = CancelRule::OnDuplicate;
    else if (*o.cancel == "closer")
      cancel = CancelRule::OnCloser;
    else
      throw std::invalid_argument("unknown cancel rule '" + *o.cancel + "'");
    DelayKind kind;
    if (*o.delay == "d1")
      kind = DelayKind::D1;
    else if (*o.delay == "d2")
      kind = DelayKind::D2;
    else if (*o.delay == "d3")
      kind = DelayKind::D3;
    else if (*o.delay == "d4")
      kind = DelayKind::D4;
    else
      throw std::invalid_argument("unknown delay function '" + *o.delay + "'");
    config = ProtocolConfig::delay_based(cancel, kind, o.max_delay);
  } else {
    throw std::invalid_argument("unknown protocol '" + name + "'");
  }
  config.validate();
  return config;
}

std::string ProtocolConfig::name() const {
  return std::visit(
      overloaded{
          [](const protocol::Flooding&) -> std::string { return "flooding"; },
          [](const protocol::MHeuristic& p) { return "m" + std::to_string(p.limit); },
          [](const protocol::THeuristic& p) { return "t" + std::to_string(p.threshold); },
          [](const protocol::CenterDistance&) -> std::string { return "cd"; },
          [](const protocol::CenterDistancePriority&) -> std::string { return "cdp"; },
          [](const protocol::DelayBased& p) {
            return "delay-" + to_string(p.delay) + "-" + to_string(p.cancel);
          },
      },
      kind);
}

std::optional<MessageId> select_message(const ProtocolConfig& protocol, NodeIndex node,
                                        const WorldState& world) {
  const NodeState& s = world.node(node);
  if (s.queue.empty()) return std::nullopt;
  if (!protocol.is<protocol::CenterDistancePriority>()) return s.queue.front();

  // Never-heard IDs first (lowest ID), then the largest distance reduction.
  const int own = world.scenario().distance_to_target(node);
  std::optional<MessageId> fresh;
  MessageId best = 0;
  int best_reduction = 0;
  for (MessageId m : s.queue) {
    const MessageRecord& rec = s.record(m);
    if (rec.heard_count == 0) {
      if (!fresh || m < *fresh) fresh = m;
      continue;
    }
    const int reduction = rec.best_originator_dist - own;
    if (best == 0 || reduction > best_reduction || (reduction == best_reduction && m < best)) {
      best = m;
      best_reduction = reduction;
    }
  }
  if (fresh) return fresh;
  return best;
}

bool transmit_check(const ProtocolConfig& protocol, NodeIndex node, MessageId message,
                    const WorldState& world) {
  const MessageRecord& rec = world.node(node).record(message);
  const Scenario& sc = world.scenario();
  return std::visit(
      overloaded{
          [](const protocol::Flooding&) { return true; },
          [&](const protocol::MHeuristic& p) { return rec.heard_count < p.limit; },
          [&](const protocol::THeuristic& p) {
            return rec.min_transmitter_dist == kInfiniteDistance ||
                   rec.min_transmitter_dist >= p.threshold;
          },
          [&](const protocol::CenterDistance&) {
            return closer_than_all_originators(node, rec, sc);
          },
          [&](const protocol::CenterDistancePriority&) {
            return closer_than_all_originators(node, rec, sc);
          },
          [&](const protocol::DelayBased& p) {
            if (p.cancel == CancelRule::OnDuplicate) return copies_received(rec) <= 1;
            return closer_than_all_originators(node, rec, sc);
          },
      },
      protocol.kind);
}

bool eager_delete_on_reception(const ProtocolConfig& protocol, NodeIndex receiver,
                               const Transmission& transmission, const WorldState& world) {
  const Scenario& sc = world.scenario();
  const MessageRecord& rec = world.node(receiver).record(transmission.message);
  const bool sender_closer =
      sc.distance_to_target(transmission.sender) < sc.distance_to_target(receiver);
  return std::visit(
      overloaded{
          [](const protocol::Flooding&) { return false; },
          [&](const protocol::MHeuristic& p) { return rec.heard_count >= p.limit; },
          [&](const protocol::THeuristic& p) {
            return distance(receiver, transmission.sender) < p.threshold;
          },
          [&](const protocol::CenterDistance&) { return sender_closer; },
          [&](const protocol::CenterDistancePriority&) { return sender_closer; },
          [&](const protocol::DelayBased& p) {
            if (p.cancel == CancelRule::OnDuplicate) return copies_received(rec) >= 2;
            return sender_closer;
          },
      },
      protocol.kind);
}

}  // namespace geocast
