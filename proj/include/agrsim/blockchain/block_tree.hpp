#ifndef AGRSIM_BLOCKCHAIN_BLOCK_TREE_HPP
#define AGRSIM_BLOCKCHAIN_BLOCK_TREE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "agrsim/blockchain/block.hpp"

namespace agrsim::chain {

enum class BlockStatus {
  Ok,
  MissingParent,
  BadHeight,
  BadDigest,
  Duplicate,
  TxReplay,
};

std::string_view to_string(BlockStatus s);

/// Append-only block tree rooted at genesis: the blockchain abstract datatype.
///
/// Writes go through append(), which only accepts blocks that pass validate().
/// Reads are fork_choice() and canonical_chain() below. Blocks are held by
/// shared pointer so trees of different nodes can share storage.
class BlockTree {
 public:
  using BlockPtr = std::shared_ptr<const Block>;

  BlockTree();

  /// Checks, in order: MissingParent, BadHeight, BadDigest, Duplicate, TxReplay
  /// (a tx repeated within the block, or already on the path genesis..parent).
  BlockStatus validate(const Block& b) const;

  /// Inserts b if validate() returns Ok; otherwise leaves the tree untouched.
  BlockStatus append(BlockPtr b);
  BlockStatus append(const Block& b) { return append(std::make_shared<const Block>(b)); }

  bool contains(const BlockId& id) const { return entries_.contains(id); }
  /// nullptr when absent.
  const Block* find(const BlockId& id) const;
  BlockPtr share(const BlockId& id) const;
  const Block& at(const BlockId& id) const;
  const std::set<BlockId>& children(const BlockId& id) const;
  const BlockId& genesis_id() const { return genesis_id_; }
  std::size_t size() const { return entries_.size(); }

  /// Leaf of maximum height; ties go to the lexicographically smallest id.
  const BlockId& longest_chain_tip() const { return best_tip_; }

  std::vector<BlockId> leaves() const;
  std::vector<BlockId> block_ids() const;

  /// Blocks from genesis to `tip` inclusive, in height order.
  std::vector<BlockPtr> path_to(const BlockId& tip) const;

  bool is_ancestor_or_self(const BlockId& ancestor, const BlockId& descendant) const;

  /// True if some block on genesis..tip includes `tx`.
  bool on_chain(const TxId& tx, const BlockId& tip) const;

  /// Verifies the structural invariants (parents present, heights consecutive,
  /// rooted and acyclic, children index consistent). Returns a description of
  /// the first violation, or nullopt.
  std::optional<std::string> check_invariants() const;

 private:
  struct Entry {
    BlockPtr block;
    std::set<BlockId> children;
  };

  std::unordered_map<BlockId, Entry, DigestHash> entries_;
  std::unordered_map<TxId, std::vector<BlockId>, DigestHash> tx_index_;
  BlockId genesis_id_;
  BlockId best_tip_;
};

using ForkChoiceRule = std::function<BlockId(const BlockTree&)>;

/// Default rule: longest chain, min-id tie-break.
BlockId fork_choice(const BlockTree& tree);

/// Looks up a rule by its configuration name ("longest-chain").
std::optional<ForkChoiceRule> fork_choice_rule(std::string_view name);

/// Path from genesis to the tip selected by `rule`.
std::vector<BlockTree::BlockPtr> canonical_chain(const BlockTree& tree, const ForkChoiceRule& rule = fork_choice);

}  // namespace agrsim::chain

#endif  // AGRSIM_BLOCKCHAIN_BLOCK_TREE_HPP
