#ifndef AGRSIM_BLOCKCHAIN_NODE_HPP
#define AGRSIM_BLOCKCHAIN_NODE_HPP

#include <cstdint>
#include <list>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "agrsim/blockchain/block_tree.hpp"
#include "agrsim/rng.hpp"

namespace agrsim::chain {

/// Pending transactions, iterated in insertion order, unique by tx_id.
class Mempool {
 public:
  bool insert(const Transaction& tx);
  bool erase(const TxId& id);
  bool contains(const TxId& id) const { return index_.contains(id); }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  auto begin() const { return order_.begin(); }
  auto end() const { return order_.end(); }

 private:
  std::list<Transaction> order_;
  std::unordered_map<TxId, std::list<Transaction>::iterator, DigestHash> index_;
};

enum class NodeRole { Client, Proposer };

struct NodeCounters {
  std::uint64_t duplicate_txs = 0;
  std::uint64_t confirmed_txs_rejected = 0;
  std::uint64_t duplicate_blocks = 0;
  std::uint64_t invalid_blocks = 0;
  std::uint64_t orphans_buffered = 0;
};

struct ReceiveOutcome {
  BlockStatus status = BlockStatus::Ok;
  /// Blocks that entered the tree, the received one first followed by any
  /// buffered descendants it connected.
  std::vector<BlockTree::BlockPtr> appended;
  /// Subset of `appended` that this node has not gossiped yet. Each block id
  /// shows up here at most once over the node's lifetime.
  std::vector<BlockTree::BlockPtr> to_relay;
};

/// Per-agent ledger state: block tree, mempool, orphan buffer, relay memory.
class NodeState {
 public:
  explicit NodeState(NodeRole role, double block_rate = 0.0, ForkChoiceRule rule = fork_choice);

  NodeRole role() const { return role_; }
  double block_rate() const { return block_rate_; }
  const BlockTree& tree() const { return tree_; }
  const Mempool& mempool() const { return mempool_; }
  const NodeCounters& counters() const { return counters_; }
  std::size_t orphan_count() const;

  BlockId tip() const { return rule_(tree_); }
  std::vector<BlockTree::BlockPtr> canonical_chain() const { return chain::canonical_chain(tree_, rule_); }

  /// Adds tx unless it is already pending or already on the canonical chain.
  bool submit_tx(const Transaction& tx);

  /// Builds a block on the current tip holding up to max_txs pending
  /// transactions (insertion order) that are not already on the canonical
  /// chain, appends it locally and marks it as gossiped. Proposer only.
  BlockTree::BlockPtr propose(AgentId self, VirtualTime now, std::size_t max_txs);

  /// Valid -> append, drop its txs from the mempool, release buffered
  /// children. MissingParent -> buffered until the parent arrives. Anything
  /// else is counted and discarded.
  ReceiveOutcome on_block_received(BlockTree::BlockPtr block);

 private:
  BlockStatus accept(const BlockTree::BlockPtr& block, ReceiveOutcome& out);

  NodeRole role_;
  double block_rate_;
  ForkChoiceRule rule_;
  BlockTree tree_;
  Mempool mempool_;
  std::set<BlockId> relayed_;
  std::map<BlockId, std::map<BlockId, BlockTree::BlockPtr>> orphans_by_parent_;
  NodeCounters counters_;
};

/// Exponential inter-event delay for a Poisson process of the given rate
/// (events per tick): round(-(1/rate) * ln(u)), u uniform in (0, 1].
Duration next_block_delay(double rate, RngStream& rng);

}  // namespace agrsim::chain

#endif  // AGRSIM_BLOCKCHAIN_NODE_HPP
