#include "geocast/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace geocast {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string describe(const ActivationSource& source) {
  return std::visit(overloaded{
                        [](const activation::Explicit& e) {
                          std::ostringstream out;
                          out << "explicit:";
                          for (std::size_t i = 0; i < e.sequence.size(); ++i)
                            out << (i ? "," : "") << e.sequence[i];
                          return out.str();
                        },
                        [](const activation::FairUniform&) -> std::string { return "fair"; },
                        [](const activation::LeftToRight&) -> std::string { return "ltr"; },
                        [](const activation::NearTargetFirst&) -> std::string {
                          return "near-target";
                        },
                        [](const activation::DelayDriven&) -> std::string { return "delay"; },
                    },
                    source);
}

std::vector<int> parse_index_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in index list '" + text + "'");
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("not an integer: '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("not an integer: '" + item + "'");
    out.push_back(value);
  }
  return out;
}

ActivationSource parse_activation_source(const std::string& text, std::uint64_t seed) {
  if (text == "fair") return activation::FairUniform{seed};
  if (text == "ltr") return activation::LeftToRight{};
  if (text == "near-target") return activation::NearTargetFirst{};
  if (text == "delay") return activation::DelayDriven{seed};
  const std::string prefix = "explicit:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string list = text.substr(prefix.size());
    if (list.empty()) return activation::Explicit{};
    return activation::Explicit{parse_index_list(list)};
  }
  throw std::invalid_argument("unknown schedule '" + text + "'");
}

Activator::Activator(ActivationSource source) : source_(std::move(source)) {
  if (const auto* fair = std::get_if<activation::FairUniform>(&source_))
    rng_ = SplitMix64(fair->seed);
  if (std::holds_alternative<activation::DelayDriven>(source_))
    throw std::invalid_argument("delay-driven runs are scheduled by timers, not an Activator");
}

std::optional<NodeIndex> Activator::next_active(const WorldState& world) {
  const NodeSet& active = world.active();
  if (active.empty()) return std::nullopt;
  return std::visit(
      overloaded{
          [&](const activation::Explicit& e) -> std::optional<NodeIndex> {
            while (cursor_ < e.sequence.size()) {
              const NodeIndex i = e.sequence[cursor_++];
              if (i >= 1 && i <= world.scenario().n && active.contains(i)) return i;
              ++skipped_;
            }
            exhausted_ = true;
            return std::nullopt;
          },
          [&](const activation::FairUniform&) -> std::optional<NodeIndex> {
            return active.nth(static_cast<int>(rng_.below(active.size())));
          },
          [&](const activation::LeftToRight&) -> std::optional<NodeIndex> {
            return active.first();
          },
          [&](const activation::NearTargetFirst&) -> std::optional<NodeIndex> {
            return active.last();
          },
          [&](const activation::DelayDriven&) -> std::optional<NodeIndex> {
            return std::nullopt;
          },
      },
      source_);
}

double delay_value(DelayKind kind, double max_delay, double radius, double progress,
                   double lateral, double own_dist, double prev_dist) {
  if (!(radius > 0.0)) throw std::invalid_argument("delay functions need r > 0");
  double value = 0.0;
  switch (kind) {
    case DelayKind::D1: value = max_delay * (radius - progress) / radius; break;
    case DelayKind::D2: value = max_delay * progress / radius; break;
    case DelayKind::D3:
      value = max_delay * std::exp(std::sqrt(progress * progress + lateral * lateral)) / std::exp(1.0);
      break;
    case DelayKind::D4: value = max_delay * (own_dist + radius - prev_dist) / (2.0 * radius); break;
  }
  return std::max(0.0, value);
}

bool EventQueue::schedule(const PendingEvent& event) {
  const auto key = std::make_pair(event.node, event.message);
  if (index_.contains(key)) return false;
  index_.emplace(key, event.fire_time);
  pending_.insert(event);
  return true;
}

bool EventQueue::cancel(NodeIndex node, MessageId message) {
  const auto it = index_.find({node, message});
  if (it == index_.end()) return false;
  pending_.erase(PendingEvent{it->second, node, message});
  index_.erase(it);
  return true;
}

std::optional<PendingEvent> EventQueue::pop() {
  if (pending_.empty()) return std::nullopt;
  const PendingEvent event = *pending_.begin();
  pending_.erase(pending_.begin());
  index_.erase({event.node, event.message});
  return event;
}

bool EventQueue::contains(NodeIndex node, MessageId message) const {
  return index_.contains({node, message});
}

double nominal_radius(const Scenario& scenario) {
  return scenario.reach.is_bounded() ? scenario.reach.radius() : scenario.n - 1;
}

double effective_max_delay(const protocol::DelayBased& config, const Scenario& scenario) {
  return config.max_delay.value_or(nominal_radius(scenario));
}

namespace {

double timer_for(const protocol::DelayBased& config, const Scenario& sc, NodeIndex prev,
                 NodeIndex node) {
  const double prev_dist = sc.distance_to_target(prev);
  const double own_dist = sc.distance_to_target(node);
  return delay_value(config.delay, effective_max_delay(config, sc), nominal_radius(sc),
                     prev_dist - own_dist, 0.0, own_dist, prev_dist);
}

}  // namespace

void schedule_seeded(const WorldState& world, const protocol::DelayBased& config,
                     EventQueue& events) {
  const Scenario& sc = world.scenario();
  for (const NodeState& s : world.nodes()) {
    for (MessageId m : s.queue)
      events.schedule({timer_for(config, sc, sc.source(), s.index), s.index, m});
  }
}

std::optional<Transmission> delay_step(WorldState& world, const ProtocolConfig& protocol,
                                       EventQueue& events, int* discards) {
  const auto* config = std::get_if<protocol::DelayBased>(&protocol.kind);
  if (!config) throw std::invalid_argument("delay_step needs a delay-based protocol");
  const Scenario& sc = world.scenario();

  while (auto event = events.pop()) {
    if (!world.node(event->node).record(event->message).queued) continue;
    if (!transmit_check(protocol, event->node, event->message, world)) {
      world.dequeue(event->node, event->message);
      if (discards) ++*discards;
      continue;
    }
    world.dequeue(event->node, event->message);
    const Transmission t{event->node, event->message, event->fire_time};
    ReceptionEffects effects;
    apply_reception(world, t, protocol, &effects);
    for (NodeIndex j : effects.deleted) events.cancel(j, t.message);
    for (NodeIndex j : effects.enqueued) {
      if (!world.node(j).record(t.message).queued) continue;
      events.schedule({t.time + timer_for(*config, sc, t.sender, j), j, t.message});
    }
    return t;
  }
  return std::nullopt;
}

}  // namespace geocast
