#include "geocast/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace geocast {

ActivationRecord activate(WorldState& world, const ProtocolConfig& protocol, NodeIndex node) {
  ActivationRecord rec;
  rec.node = node;
  rec.message = select_message(protocol, node, world);
  if (!rec.message) return rec;
  const MessageId m = *rec.message;
  const bool pass = transmit_check(protocol, node, m, world);
  world.dequeue(node, m);
  if (pass) {
    rec.transmitted = true;
    rec.time = static_cast<double>(world.log().size());
    apply_reception(world, Transmission{node, m, rec.time}, protocol);
  }
  return rec;
}

RunResult summarize(const WorldState& world) {
  const Scenario& sc = world.scenario();
  RunResult out;
  out.per_node_receptions.reserve(sc.n);
  out.per_node_transmissions.reserve(sc.n);
  for (const NodeState& s : world.nodes()) {
    out.per_node_receptions.push_back(s.receptions_total);
    out.per_node_transmissions.push_back(s.transmissions);
    out.rec_mess = std::max(out.rec_mess, s.receptions_total);
  }
  out.transmissions_total = static_cast<std::int64_t>(world.log().size());
  out.per_message_delivered.reserve(sc.k);
  for (MessageId m = 1; m <= sc.k; ++m) out.per_message_delivered.push_back(world.delivered(m));
  out.delivered_all = world.all_delivered();
  return out;
}

namespace {

std::int64_t cap_for(const Scenario& sc, const RunLimits& limits) {
  const std::int64_t cap =
      limits.max_activations.value_or(4LL * sc.n * static_cast<std::int64_t>(sc.k));
  if (cap < 1) throw std::invalid_argument("max_activations must be >= 1");
  return cap;
}

RunResult run_delay(WorldState world, const ProtocolConfig& protocol, const RunLimits& limits,
                    const RunObserver& observer) {
  const auto& config = std::get<protocol::DelayBased>(protocol.kind);
  const std::int64_t cap = cap_for(world.scenario(), limits);
  EventQueue events;
  schedule_seeded(world, config, events);

  std::int64_t activations = 0;
  double now = 0.0;
  bool capped = false;
  while (!events.empty()) {
    if (activations >= cap) {
      capped = true;
      break;
    }
    int discards = 0;
    const auto t = delay_step(world, protocol, events, &discards);
    activations += discards;
    if (!t) break;
    ++activations;
    now = t->time;
    if (observer) {
      observer(world, ActivationRecord{activations, t->sender, t->message, true, t->time});
    }
  }
  RunResult out = summarize(world);
  out.activations = activations;
  out.terminated = !capped;
  out.end_time = now;
  return out;
}

}  // namespace

RunResult run_from(WorldState world, const ProtocolConfig& protocol,
                   const ActivationSource& source, const RunLimits& limits,
                   const RunObserver& observer) {
  protocol.validate();
  const bool delay_protocol = protocol.is<protocol::DelayBased>();
  const bool delay_source = std::holds_alternative<activation::DelayDriven>(source);
  if (delay_protocol != delay_source)
    throw std::invalid_argument(
        "delay-based protocols run with the delay schedule, and only they do");
  if (delay_protocol) return run_delay(std::move(world), protocol, limits, observer);

  const std::int64_t cap = cap_for(world.scenario(), limits);
  Activator activator(source);
  std::int64_t activations = 0;
  bool capped = false;
  while (true) {
    if (activations >= cap) {
      capped = !world.active().empty();
      break;
    }
    const auto node = activator.next_active(world);
    if (!node) break;
    ActivationRecord rec = activate(world, protocol, *node);
    rec.index = ++activations;
    if (observer) observer(world, rec);
  }
  RunResult out = summarize(world);
  out.activations = activations;
  out.schedule_exhausted = activator.exhausted();
  out.terminated = !capped && !activator.exhausted();
  return out;
}

RunResult run(const Scenario& scenario, const ProtocolConfig& protocol,
              const ActivationSource& source, const RunLimits& limits,
              const RunObserver& observer) {
  return run_from(seed_initial_state(scenario), protocol, source, limits, observer);
}

GridSnapshot snapshot(const WorldState& world) {
  GridSnapshot grid;
  grid.reserve(world.nodes().size());
  for (const NodeState& s : world.nodes()) grid.push_back(s.queue);
  return grid;
}

std::vector<TraceStep> trace(const Scenario& scenario, const ProtocolConfig& protocol,
                             const ActivationSource& source, const RunLimits& limits) {
  WorldState world = seed_initial_state(scenario);
  std::vector<TraceStep> steps;
  steps.push_back({std::nullopt, snapshot(world)});
  run_from(std::move(world), protocol, source, limits,
           [&](const WorldState& w, const ActivationRecord& rec) {
             steps.push_back({rec, snapshot(w)});
           });
  return steps;
}

std::string render_trace(const Scenario& scenario, const std::vector<TraceStep>& steps) {
  std::ostringstream out;
  const int width = static_cast<int>(
      std::max(std::to_string(scenario.k).size(), std::to_string(scenario.n).size()));
  for (const TraceStep& step : steps) {
    if (step.activation) {
      const ActivationRecord& a = *step.activation;
      out << "round " << a.index << ": node " << a.node;
      if (a.message)
        out << (a.transmitted ? " sends " : " discards ") << *a.message;
      else
        out << " idle";
      out << "\n";
    } else {
      out << "initial state (" << scenario.describe() << ")\n";
    }
    const NodeIndex active = step.activation ? step.activation->node : 0;
    // Row j lists the j-th queue slot of every node, as in the message grid.
    for (int row = scenario.k - 1; row >= 0; --row) {
      for (NodeIndex i = 1; i <= scenario.n; ++i) {
        const auto& queue = step.grid[i - 1];
        std::string cell = row < static_cast<int>(queue.size()) ? std::to_string(queue[row]) : ".";
        cell = std::string(width - std::min<int>(width, cell.size()), ' ') + cell;
        out << (i == active ? "[" : " ") << cell << (i == active ? "]" : " ");
      }
      out << "\n";
    }
    for (NodeIndex i = 1; i <= scenario.n; ++i) {
      const std::string label = std::to_string(i);
      out << " " << std::string(width - label.size(), ' ') << label << " ";
    }
    out << "\n\n";
  }
  return out.str();
}

}  // namespace geocast
