#ifndef AGRSIM_BLOCKCHAIN_BLOCK_HPP
#define AGRSIM_BLOCKCHAIN_BLOCK_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "agrsim/sha256.hpp"
#include "agrsim/types.hpp"

namespace agrsim::chain {

using BlockId = Digest;
using TxId = Digest;

struct Transaction {
  TxId tx_id{};
  AgentId submitter;
  VirtualTime created_at;
  std::uint64_t payload_size = 0;
  /// Per-submitter sequence number; makes otherwise identical submissions distinct.
  std::uint64_t counter = 0;

  bool operator==(const Transaction&) const = default;

  /// Builds a transaction with its id computed from the other fields.
  static Transaction make(AgentId submitter, VirtualTime created_at, std::uint64_t payload_size,
                          std::uint64_t counter);
};

/// Canonical tx preimage: submitter, created_at, payload_size, counter as u64 big-endian (32 bytes).
std::vector<std::uint8_t> encode_transaction(const Transaction& tx);
TxId compute_tx_id(const Transaction& tx);

struct Block {
  BlockId block_id{};
  std::optional<BlockId> parent;  // absent only for genesis
  std::uint64_t height = 0;
  AgentId proposer;
  std::vector<TxId> txs;
  VirtualTime created_at;

  bool operator==(const Block&) const = default;
};

/// Canonical block preimage (see docs/block-encoding.md):
///   parent marker  u8       0x00 = none (genesis), 0x01 = present
///   parent id      32 bytes only when the marker is 0x01
///   height         u64 BE
///   proposer       u64 BE
///   tx count       u32 BE
///   tx ids         32 bytes each, block order
///   created_at     u64 BE
std::vector<std::uint8_t> encode_block(const Block& b);
BlockId compute_block_id(const Block& b);

/// Builds a block and fills in its id.
Block make_block(std::optional<BlockId> parent, std::uint64_t height, AgentId proposer, std::vector<TxId> txs,
                 VirtualTime created_at);

/// The unique genesis block: no parent, height 0, proposer 0, no txs, created_at 0.
const Block& genesis();

}  // namespace agrsim::chain

#endif  // AGRSIM_BLOCKCHAIN_BLOCK_HPP
