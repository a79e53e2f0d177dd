#include "agrsim/blockchain/block.hpp"

#include <limits>
#include <stdexcept>

namespace agrsim::chain {
namespace {

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

}  // namespace

std::vector<std::uint8_t> encode_transaction(const Transaction& tx) {
  std::vector<std::uint8_t> out;
  out.reserve(32);
  put_u64(out, tx.submitter.value);
  put_u64(out, tx.created_at.ticks);
  put_u64(out, tx.payload_size);
  put_u64(out, tx.counter);
  return out;
}

TxId compute_tx_id(const Transaction& tx) { return Sha256::of(encode_transaction(tx)); }

Transaction Transaction::make(AgentId submitter, VirtualTime created_at, std::uint64_t payload_size,
                              std::uint64_t counter) {
  Transaction tx{{}, submitter, created_at, payload_size, counter};
  tx.tx_id = compute_tx_id(tx);
  return tx;
}

std::vector<std::uint8_t> encode_block(const Block& b) {
  if (b.txs.size() > std::numeric_limits<std::uint32_t>::max()) throw std::length_error("too many transactions");
  std::vector<std::uint8_t> out;
  out.reserve(1 + 32 + 8 + 8 + 4 + 32 * b.txs.size() + 8);
  if (b.parent) {
    out.push_back(0x01);
    out.insert(out.end(), b.parent->begin(), b.parent->end());
  } else {
    out.push_back(0x00);
  }
  put_u64(out, b.height);
  put_u64(out, b.proposer.value);
  put_u32(out, static_cast<std::uint32_t>(b.txs.size()));
  for (const TxId& tx : b.txs) out.insert(out.end(), tx.begin(), tx.end());
  put_u64(out, b.created_at.ticks);
  return out;
}

BlockId compute_block_id(const Block& b) { return Sha256::of(encode_block(b)); }

Block make_block(std::optional<BlockId> parent, std::uint64_t height, AgentId proposer, std::vector<TxId> txs,
                 VirtualTime created_at) {
  Block b{{}, parent, height, proposer, std::move(txs), created_at};
  b.block_id = compute_block_id(b);
  return b;
}

const Block& genesis() {
  static const Block g = make_block(std::nullopt, 0, AgentId{0}, {}, VirtualTime{0});
  return g;
}

}  // namespace agrsim::chain
