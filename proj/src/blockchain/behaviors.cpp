#include "agrsim/blockchain/behaviors.hpp"

namespace agrsim::chain {
namespace {

constexpr std::string_view kProposeTimer = "propose";
constexpr std::string_view kSubmitTimer = "submit";

// Schedules `tag` after `delay` unless that would land past the active window.
void schedule_within(AgentContext& ctx, const NetworkSettings& settings, std::string_view tag, Duration delay) {
  const std::uint64_t now = ctx.now().ticks;
  if (delay > settings.active_until.ticks || now > settings.active_until.ticks - delay) return;
  ctx.schedule(Payload(std::string(tag)), delay);
}

}  // namespace

ProposerBehavior::ProposerBehavior(NetworkSettings settings)
    : settings_(std::move(settings)), node_(NodeRole::Proposer, settings_.block_rate, settings_.fork_choice_rule) {}

void ProposerBehavior::on_activate(AgentContext& ctx) {
  ctx.join(settings_.group, kNodeRole);
  arm_timer(ctx);
}

void ProposerBehavior::arm_timer(AgentContext& ctx) {
  schedule_within(ctx, settings_, kProposeTimer, next_block_delay(settings_.block_rate, ctx.rng()));
}

void ProposerBehavior::gossip(AgentContext& ctx, const BlockTree::BlockPtr& block) {
  ctx.send(settings_.group, ToRole{kNodeRole}, Payload::wrap("block", block));
}

void ProposerBehavior::on_event(AgentContext& ctx, const Payload& payload) {
  if (ctx.envelope() == nullptr && payload.tag() == kProposeTimer) {
    auto block = node_.propose(ctx.self(), ctx.now(), settings_.max_txs_per_block);
    ++proposed_;
    if (settings_.observer != nullptr) {
      settings_.observer->block_proposed(ctx.self(), *block, ctx.now());
      settings_.observer->block_appended(ctx.self(), *block, ctx.now());
    }
    gossip(ctx, block);
    arm_timer(ctx);
  } else if (auto block = payload.share<Block>()) {
    const ReceiveOutcome outcome = node_.on_block_received(std::move(block));
    if (settings_.observer != nullptr) {
      for (const auto& b : outcome.appended) settings_.observer->block_appended(ctx.self(), *b, ctx.now());
    }
    for (const auto& b : outcome.to_relay) gossip(ctx, b);
  } else if (const auto* tx = payload.get<Transaction>()) {
    node_.submit_tx(*tx);
  }
}

void ClientBehavior::on_activate(AgentContext& ctx) {
  ctx.join(settings_.group, kClientRole);
  arm_timer(ctx);
}

void ClientBehavior::arm_timer(AgentContext& ctx) {
  if (settings_.tx_rate > 0.0) {
    schedule_within(ctx, settings_, kSubmitTimer, next_block_delay(settings_.tx_rate, ctx.rng()));
  }
}

void ClientBehavior::on_event(AgentContext& ctx, const Payload& payload) {
  if (ctx.envelope() != nullptr || payload.tag() != kSubmitTimer) return;
  ++counter_;
  const Transaction tx = Transaction::make(ctx.self(), ctx.now(), settings_.tx_payload_size, counter_);
  if (settings_.observer != nullptr) settings_.observer->tx_created(ctx.self(), tx, ctx.now());
  ctx.send(settings_.group, ToRole{kNodeRole}, Payload::make("tx", tx));
  arm_timer(ctx);
}

}  // namespace agrsim::chain
