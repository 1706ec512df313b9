#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geocast/model.hpp"
#include "geocast/protocols.hpp"
#include "geocast/scheduling.hpp"

namespace geocast {

struct RunLimits {
  // Unset means 4 * n * k.
  std::optional<std::int64_t> max_activations;
};

struct RunResult {
  std::int64_t rec_mess = 0;
  std::vector<std::int64_t> per_node_receptions;  // index 0 is node 1
  std::vector<int> per_node_transmissions;
  std::int64_t transmissions_total = 0;
  std::int64_t activations = 0;
  bool delivered_all = false;
  std::vector<bool> per_message_delivered;
  // False when the activation cap was hit or an explicit schedule ran out.
  bool terminated = false;
  bool schedule_exhausted = false;
  double end_time = 0.0;  // delay-based runs only
};

struct ActivationRecord {
  std::int64_t index = 0;  // 1-based activation number
  NodeIndex node = 0;
  std::optional<MessageId> message;
  bool transmitted = false;
  double time = 0.0;
};

// Called after each activation has been fully applied.
using RunObserver = std::function<void(const WorldState&, const ActivationRecord&)>;

RunResult run(const Scenario& scenario, const ProtocolConfig& protocol,
              const ActivationSource& source, const RunLimits& limits = {},
              const RunObserver& observer = {});

// Runs from an arbitrary state (used by the enumerators and property tests).
RunResult run_from(WorldState world, const ProtocolConfig& protocol,
                   const ActivationSource& source, const RunLimits& limits = {},
                   const RunObserver& observer = {});

// A single non-delay activation of `node`: select, check, transmit or discard.
ActivationRecord activate(WorldState& world, const ProtocolConfig& protocol, NodeIndex node);

RunResult summarize(const WorldState& world);

// Queue contents per node: grid[i - 1] is node i's queue in FIFO order.
using GridSnapshot = std::vector<std::vector<MessageId>>;

struct TraceStep {
  std::optional<ActivationRecord> activation;  // empty for the seed snapshot
  GridSnapshot grid;
};

GridSnapshot snapshot(const WorldState& world);

std::vector<TraceStep> trace(const Scenario& scenario, const ProtocolConfig& protocol,
                             const ActivationSource& source, const RunLimits& limits = {});

// Message-grid text art: one row per message, one column per node; the
// activated column is bracketed.
std::string render_trace(const Scenario& scenario, const std::vector<TraceStep>& steps);

}  // namespace geocast
