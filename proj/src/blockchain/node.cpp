#include "agrsim/blockchain/node.hpp"

#include <stdexcept>

#include "agrsim/mediation.hpp"

namespace agrsim::chain {

bool Mempool::insert(const Transaction& tx) {
  if (index_.contains(tx.tx_id)) return false;
  order_.push_back(tx);
  index_.emplace(tx.tx_id, std::prev(order_.end()));
  return true;
}

bool Mempool::erase(const TxId& id) {
  auto it = index_.find(id);
  if (it == index_.end()) return false;
  order_.erase(it->second);
  index_.erase(it);
  return true;
}

NodeState::NodeState(NodeRole role, double block_rate, ForkChoiceRule rule)
    : role_(role), block_rate_(block_rate), rule_(std::move(rule)) {
  if (role_ == NodeRole::Proposer && !(block_rate_ > 0.0)) {
    throw std::invalid_argument("a proposer needs block_rate > 0");
  }
  if (!rule_) throw std::invalid_argument("fork-choice rule must be set");
}

std::size_t NodeState::orphan_count() const {
  std::size_t n = 0;
  for (const auto& [parent, blocks] : orphans_by_parent_) n += blocks.size();
  return n;
}

bool NodeState::submit_tx(const Transaction& tx) {
  if (mempool_.contains(tx.tx_id)) {
    ++counters_.duplicate_txs;
    return false;
  }
  if (tree_.on_chain(tx.tx_id, tip())) {
    ++counters_.confirmed_txs_rejected;
    return false;
  }
  return mempool_.insert(tx);
}

BlockTree::BlockPtr NodeState::propose(AgentId self, VirtualTime now, std::size_t max_txs) {
  if (role_ != NodeRole::Proposer) throw std::logic_error("only proposers build blocks");
  const BlockId parent = tip();
  const Block& parent_block = tree_.at(parent);

  std::vector<TxId> txs;
  for (const Transaction& tx : mempool_) {
    if (txs.size() >= max_txs) break;
    if (!tree_.on_chain(tx.tx_id, parent)) txs.push_back(tx.tx_id);
  }
  auto block = std::make_shared<const Block>(make_block(parent, parent_block.height + 1, self, std::move(txs), now));
  const BlockStatus status = tree_.append(block);
  if (status != BlockStatus::Ok) {
    throw std::logic_error("proposed block failed validation: " + std::string(to_string(status)));
  }
  for (const TxId& tx : block->txs) mempool_.erase(tx);
  relayed_.insert(block->block_id);
  return block;
}

BlockStatus NodeState::accept(const BlockTree::BlockPtr& block, ReceiveOutcome& out) {
  const BlockStatus status = tree_.append(block);
  if (status != BlockStatus::Ok) return status;
  for (const TxId& tx : block->txs) mempool_.erase(tx);
  out.appended.push_back(block);
  if (relayed_.insert(block->block_id).second) out.to_relay.push_back(block);
  return status;
}

ReceiveOutcome NodeState::on_block_received(BlockTree::BlockPtr block) {
  if (!block) throw std::invalid_argument("on_block_received: null block");
  ReceiveOutcome out;
  out.status = accept(block, out);

  switch (out.status) {
    case BlockStatus::Ok:
      break;
    case BlockStatus::MissingParent: {
      if (!block->parent) {
        ++counters_.invalid_blocks;
        return out;
      }
      auto& waiting = orphans_by_parent_[*block->parent];
      if (waiting.emplace(block->block_id, block).second) {
        ++counters_.orphans_buffered;
      } else {
        ++counters_.duplicate_blocks;
      }
      return out;
    }
    case BlockStatus::Duplicate:
      ++counters_.duplicate_blocks;
      return out;
    default:
      ++counters_.invalid_blocks;
      return out;
  }

  // Release buffered descendants, breadth-first in id order.
  for (std::size_t i = 0; i < out.appended.size(); ++i) {
    auto waiting = orphans_by_parent_.find(out.appended[i]->block_id);
    if (waiting == orphans_by_parent_.end()) continue;
    auto children = std::move(waiting->second);
    orphans_by_parent_.erase(waiting);
    for (auto& [id, child] : children) {
      const BlockStatus s = accept(child, out);
      if (s == BlockStatus::Duplicate) {
        ++counters_.duplicate_blocks;
      } else if (s != BlockStatus::Ok) {
        ++counters_.invalid_blocks;
      }
    }
  }
  return out;
}

Duration next_block_delay(double rate, RngStream& rng) {
  if (!(rate > 0.0)) throw std::invalid_argument("next_block_delay: rate must be > 0");
  return sample_latency(ExponentialLatency{1.0 / rate}, rng);
}

}  // namespace agrsim::chain
