#ifndef AGRSIM_BLOCKCHAIN_BEHAVIORS_HPP
#define AGRSIM_BLOCKCHAIN_BEHAVIORS_HPP

#include <cstdint>

#include "agrsim/blockchain/node.hpp"
#include "agrsim/simulation.hpp"

namespace agrsim::chain {

inline const RoleId kNodeRole{"Node"};
inline const RoleId kClientRole{"Client"};

/// Passive hooks for experiment bookkeeping. Never influences the model.
class ChainObserver {
 public:
  virtual ~ChainObserver() = default;
  virtual void block_proposed(AgentId /*proposer*/, const Block& /*block*/, VirtualTime /*at*/) {}
  virtual void block_appended(AgentId /*node*/, const Block& /*block*/, VirtualTime /*at*/) {}
  virtual void tx_created(AgentId /*client*/, const Transaction& /*tx*/, VirtualTime /*at*/) {}
};

struct NetworkSettings {
  GroupId group;
  double block_rate = 0.0;  // per proposer per tick
  double tx_rate = 0.0;     // per client per tick
  std::size_t max_txs_per_block = 0;
  std::uint64_t tx_payload_size = 250;
  /// Timers that would fire after this instant are not scheduled.
  VirtualTime active_until{UINT64_MAX};
  ForkChoiceRule fork_choice_rule = fork_choice;
  ChainObserver* observer = nullptr;
};

/// Block-producing full node. Joins the network group as "Node", proposes at
/// exponential intervals, and gossips every block it accepts exactly once.
class ProposerBehavior final : public AgentBehavior {
 public:
  explicit ProposerBehavior(NetworkSettings settings);

  void on_activate(AgentContext& ctx) override;
  void on_event(AgentContext& ctx, const Payload& payload) override;

  const NodeState& node() const { return node_; }
  std::uint64_t blocks_proposed() const { return proposed_; }

 private:
  void arm_timer(AgentContext& ctx);
  void gossip(AgentContext& ctx, const BlockTree::BlockPtr& block);

  NetworkSettings settings_;
  NodeState node_;
  std::uint64_t proposed_ = 0;
};

/// Transaction source. Joins as "Client" and sends transactions to every
/// "Node" as a Poisson process at tx_rate.
class ClientBehavior final : public AgentBehavior {
 public:
  explicit ClientBehavior(NetworkSettings settings) : settings_(std::move(settings)) {}

  void on_activate(AgentContext& ctx) override;
  void on_event(AgentContext& ctx, const Payload& payload) override;

  std::uint64_t submitted() const { return counter_; }

 private:
  void arm_timer(AgentContext& ctx);

  NetworkSettings settings_;
  std::uint64_t counter_ = 0;
};

}  // namespace agrsim::chain

#endif  // AGRSIM_BLOCKCHAIN_BEHAVIORS_HPP
