#include "agrsim/blockchain/block_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace agrsim::chain {

std::string_view to_string(BlockStatus s) {
  switch (s) {
    case BlockStatus::Ok: return "Ok";
    case BlockStatus::MissingParent: return "MissingParent";
    case BlockStatus::BadHeight: return "BadHeight";
    case BlockStatus::BadDigest: return "BadDigest";
    case BlockStatus::Duplicate: return "Duplicate";
    case BlockStatus::TxReplay: return "TxReplay";
  }
  return "?";
}

BlockTree::BlockTree() : genesis_id_(genesis().block_id), best_tip_(genesis_id_) {
  entries_.emplace(genesis_id_, Entry{std::make_shared<const Block>(genesis()), {}});
}

const Block* BlockTree::find(const BlockId& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : it->second.block.get();
}

BlockTree::BlockPtr BlockTree::share(const BlockId& id) const {
  auto it = entries_.find(id);
  return it == entries_.end() ? nullptr : it->second.block;
}

const Block& BlockTree::at(const BlockId& id) const {
  const Block* b = find(id);
  if (b == nullptr) throw std::out_of_range("block " + to_hex(id) + " not in tree");
  return *b;
}

const std::set<BlockId>& BlockTree::children(const BlockId& id) const {
  auto it = entries_.find(id);
  if (it == entries_.end()) throw std::out_of_range("block " + to_hex(id) + " not in tree");
  return it->second.children;
}

bool BlockTree::is_ancestor_or_self(const BlockId& ancestor, const BlockId& descendant) const {
  const Block* a = find(ancestor);
  const Block* d = find(descendant);
  if (a == nullptr || d == nullptr) return false;
  while (d->height > a->height) d = find(*d->parent);
  return d->block_id == a->block_id;
}

bool BlockTree::on_chain(const TxId& tx, const BlockId& tip) const {
  auto it = tx_index_.find(tx);
  if (it == tx_index_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const BlockId& holder) { return is_ancestor_or_self(holder, tip); });
}

BlockStatus BlockTree::validate(const Block& b) const {
  if (!b.parent) return contains(b.block_id) ? BlockStatus::Duplicate : BlockStatus::MissingParent;
  const Block* parent = find(*b.parent);
  if (parent == nullptr) return BlockStatus::MissingParent;
  if (b.height != parent->height + 1) return BlockStatus::BadHeight;

  // An identical copy of a stored block carries a digest that was already verified.
  const Block* existing = find(b.block_id);
  if (existing != nullptr && *existing == b) return BlockStatus::Duplicate;
  if (compute_block_id(b) != b.block_id) return BlockStatus::BadDigest;
  if (existing != nullptr) return BlockStatus::Duplicate;

  std::set<TxId> seen;
  for (const TxId& tx : b.txs) {
    if (!seen.insert(tx).second) return BlockStatus::TxReplay;
    if (on_chain(tx, *b.parent)) return BlockStatus::TxReplay;
  }
  return BlockStatus::Ok;
}

BlockStatus BlockTree::append(BlockPtr b) {
  if (!b) throw std::invalid_argument("append: null block");
  const BlockStatus status = validate(*b);
  if (status != BlockStatus::Ok) return status;

  const BlockId id = b->block_id;
  entries_.at(*b->parent).children.insert(id);
  for (const TxId& tx : b->txs) tx_index_[tx].push_back(id);
  const Block& best = at(best_tip_);
  if (b->height > best.height || (b->height == best.height && id < best_tip_)) best_tip_ = id;
  entries_.emplace(id, Entry{std::move(b), {}});
  return BlockStatus::Ok;
}

std::vector<BlockId> BlockTree::leaves() const {
  std::vector<BlockId> out;
  for (const auto& [id, e] : entries_) {
    if (e.children.empty()) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BlockId> BlockTree::block_ids() const {
  std::vector<BlockId> out;
  out.reserve(entries_.size());
  for (const auto& [id, e] : entries_) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<BlockTree::BlockPtr> BlockTree::path_to(const BlockId& tip) const {
  std::vector<BlockPtr> path;
  BlockPtr cur = share(tip);
  if (!cur) throw std::out_of_range("block " + to_hex(tip) + " not in tree");
  path.reserve(cur->height + 1);
  while (cur) {
    path.push_back(cur);
    cur = cur->parent ? share(*cur->parent) : nullptr;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<std::string> BlockTree::check_invariants() const {
  std::size_t child_links = 0;
  for (const auto& [id, e] : entries_) {
    const Block& b = *e.block;
    if (b.block_id != id) return "entry key differs from block id " + to_hex(id);
    child_links += e.children.size();
    for (const BlockId& c : e.children) {
      const Block* child = find(c);
      if (child == nullptr || child->parent != id) return "children index of " + to_hex(id) + " is inconsistent";
    }
    if (id == genesis_id_) {
      if (b.parent || b.height != 0) return "genesis is malformed";
      continue;
    }
    if (!b.parent) return "non-genesis block " + to_hex(id) + " has no parent";
    const Block* parent = find(*b.parent);
    if (parent == nullptr) return "parent of " + to_hex(id) + " is missing";
    if (b.height != parent->height + 1) return "height of " + to_hex(id) + " is not parent height + 1";
  }
  // Each non-genesis block contributes exactly one child link; with strictly
  // increasing heights along parent edges this makes the structure a tree
  // rooted at genesis.
  if (child_links + 1 != entries_.size()) return "children index does not cover every block exactly once";
  BlockId best = genesis_id_;
  for (const auto& [id, e] : entries_) {
    const Block& cur = at(best);
    if (e.block->height > cur.height || (e.block->height == cur.height && id < best)) best = id;
  }
  if (best != best_tip_) return "cached longest-chain tip is stale";
  return std::nullopt;
}

BlockId fork_choice(const BlockTree& tree) { return tree.longest_chain_tip(); }

std::optional<ForkChoiceRule> fork_choice_rule(std::string_view name) {
  if (name == "longest-chain") return ForkChoiceRule(fork_choice);
  return std::nullopt;
}

std::vector<BlockTree::BlockPtr> canonical_chain(const BlockTree& tree, const ForkChoiceRule& rule) {
  return tree.path_to(rule(tree));
}

}  // namespace agrsim::chain
