#pragma once

#include <optional>
#include <string>
#include <variant>

#include "geocast/model.hpp"

namespace geocast {

enum class CancelRule { OnDuplicate, OnCloser };
enum class DelayKind { D1, D2, D3, D4 };

namespace protocol {

struct Flooding {};

// Retransmit while fewer than `limit` copies of the ID were heard.
struct MHeuristic {
  int limit = 2;
};

// Retransmit only if every heard transmitter is at least `threshold` away.
struct THeuristic {
  int threshold = 1;
};

// Center-distance: retransmit only when closer to the target than every
// heard originator.
struct CenterDistance {};

// Center-distance with priority selection by largest distance reduction.
struct CenterDistancePriority {};

// Timer-driven forwarding. `max_delay` unset means MD = r.
struct DelayBased {
  CancelRule cancel = CancelRule::OnCloser;
  DelayKind delay = DelayKind::D2;
  std::optional<double> max_delay;
};

}  // namespace protocol

struct ProtocolConfig {
  using Kind = std::variant<protocol::Flooding, protocol::MHeuristic, protocol::THeuristic,
                            protocol::CenterDistance, protocol::CenterDistancePriority,
                            protocol::DelayBased>;
  Kind kind;

  static ProtocolConfig flooding() { return {protocol::Flooding{}}; }
  static ProtocolConfig m_heuristic(int limit) { return {protocol::MHeuristic{limit}}; }
  static ProtocolConfig t_heuristic(int threshold) { return {protocol::THeuristic{threshold}}; }
  static ProtocolConfig cd() { return {protocol::CenterDistance{}}; }
  static ProtocolConfig cdp() { return {protocol::CenterDistancePriority{}}; }
  static ProtocolConfig delay_based(CancelRule cancel, DelayKind delay,
                                    std::optional<double> max_delay = std::nullopt) {
    return {protocol::DelayBased{cancel, delay, max_delay}};
  }

  template <typename T>
  bool is() const { return std::holds_alternative<T>(kind); }

  // Throws std::invalid_argument for M <= 1, T < 1 or MD <= 0.
  void validate() const;

  // Short name used in reports: flooding, m2, t1, cd, cdp, delay-d2-closer.
  std::string name() const;
};

std::string to_string(CancelRule rule);
std::string to_string(DelayKind kind);

// Protocol selection as given on the command line or in a config file.
struct ProtocolOptions {
  std::string name;  // flooding, m, t, cd, cdp, delay
  std::optional<int> m_limit;
  std::optional<int> t_threshold;
  std::optional<std::string> cancel;  // dup, closer
  std::optional<std::string> delay;   // d1..d4
  std::optional<double> max_delay;
};

// Parameters are required by, and only accepted for, their own protocol.
// Throws std::invalid_argument otherwise.
ProtocolConfig make_protocol(const ProtocolOptions& options);

// Message the node sends when activated; nullopt for an empty queue.
std::optional<MessageId> select_message(const ProtocolConfig& protocol, NodeIndex node,
                                        const WorldState& world);

// Heuristic check run on the selected message; false means discard.
bool transmit_check(const ProtocolConfig& protocol, NodeIndex node, MessageId message,
                    const WorldState& world);

// Whether the receiver drops the transmitted ID from its queue right away.
// Called after the receiver's counters were updated.
bool eager_delete_on_reception(const ProtocolConfig& protocol, NodeIndex receiver,
                               const Transmission& transmission, const WorldState& world);

}  // namespace geocast
