#include "agrsim/harness/experiment.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "agrsim/blockchain/behaviors.hpp"

namespace agrsim::harness {
namespace {

using chain::Block;
using chain::BlockId;

class MetricsCollector final : public chain::ChainObserver {
 public:
  struct BlockStats {
    VirtualTime proposed_at;
    std::uint64_t appended_by = 0;
    VirtualTime last_append;
  };

  void block_proposed(AgentId, const Block& block, VirtualTime at) override {
    proposals_.push_back(block.block_id);
    last_proposal_ = at;
    blocks_[block.block_id].proposed_at = at;
  }

  void block_appended(AgentId, const Block& block, VirtualTime at) override {
    BlockStats& s = blocks_[block.block_id];
    ++s.appended_by;
    s.last_append = std::max(s.last_append, at);
  }

  void tx_created(AgentId, const chain::Transaction&, VirtualTime) override { ++txs_; }

  const std::vector<BlockId>& proposals() const { return proposals_; }
  const BlockStats& stats(const BlockId& id) const { return blocks_.at(id); }
  VirtualTime last_proposal() const { return last_proposal_; }
  std::uint64_t txs() const { return txs_; }

 private:
  std::vector<BlockId> proposals_;
  std::unordered_map<BlockId, BlockStats, DigestHash> blocks_;
  VirtualTime last_proposal_{};
  std::uint64_t txs_ = 0;
};

}  // namespace

std::uint64_t MetricsRecord::max_canonical_height() const {
  std::uint64_t h = 0;
  for (const auto& [agent, height] : canonical_height) h = std::max(h, height);
  return h;
}

std::uint64_t MetricsRecord::min_canonical_height() const {
  if (canonical_height.empty()) return 0;
  std::uint64_t h = UINT64_MAX;
  for (const auto& [agent, height] : canonical_height) h = std::min(h, height);
  return h;
}

std::vector<std::pair<std::string_view, double>> numeric_metrics(const MetricsRecord& m) {
  auto d = [](std::uint64_t v) { return static_cast<double>(v); };
  return {
      {"blocks_proposed", d(m.blocks_proposed)},
      {"orphan_blocks", d(m.orphan_blocks)},
      {"mean_block_interval", m.mean_block_interval},
      {"mean_propagation_delay", m.mean_propagation_delay},
      {"consistent", m.consistent ? 1.0 : 0.0},
      {"max_canonical_height", d(m.max_canonical_height())},
      {"min_canonical_height", d(m.min_canonical_height())},
      {"dropped", d(m.dropped)},
      {"undeliverable", d(m.undeliverable)},
      {"stale_delivery", d(m.stale_delivery)},
      {"delivered", d(m.delivered)},
      {"fired_events", d(m.fired_events)},
      {"txs_created", d(m.txs_created)},
  };
}

RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();

  Simulation sim(config.seed, options.queue);
  TraceRecorder recorder(options.trace_out);
  sim.kernel().add_observer([&recorder](const FiredEvent& ev) { recorder.record(ev); });
  if (options.on_event) sim.kernel().add_observer(options.on_event);
  if (options.on_delivery) sim.on_delivery(options.on_delivery);

  MetricsCollector collector;
  const GroupId group = sim.create_group(std::make_unique<PassiveEnvironment>(), config.mediation_policy(),
                                         {chain::kNodeRole, chain::kClientRole});

  chain::NetworkSettings settings;
  settings.group = group;
  settings.block_rate = config.block_rate;
  settings.tx_rate = config.tx_rate;
  settings.max_txs_per_block = config.max_txs_per_block;
  settings.active_until = VirtualTime{config.stop_time};
  settings.fork_choice_rule = *chain::fork_choice_rule(config.fork_choice_rule);
  settings.observer = &collector;

  std::vector<AgentId> proposers;
  proposers.reserve(config.num_proposers);
  for (std::uint64_t i = 0; i < config.num_proposers; ++i) {
    proposers.push_back(sim.spawn_agent(std::make_unique<chain::ProposerBehavior>(settings)));
  }
  for (std::uint64_t i = 0; i < config.num_clients; ++i) {
    sim.spawn_agent(std::make_unique<chain::ClientBehavior>(settings));
  }

  if (options.on_start) options.on_start(sim);
  sim.kernel().run_until(VirtualTime{config.stop_time});
  sim.kernel().run(options.max_drain_events);
  if (!sim.kernel().idle()) throw DrainError("drain did not reach quiescence");

  MetricsRecord m;
  m.seed = config.seed;
  m.blocks_proposed = collector.proposals().size();
  m.txs_created = collector.txs();
  m.fired_events = sim.kernel().fired_count();
  const MediationCounters& c = sim.counters();
  m.dropped = c.dropped;
  m.undeliverable = c.undeliverable;
  m.stale_delivery = c.stale_delivery;
  m.delivered = c.delivered;

  if (m.blocks_proposed > 0) {
    m.mean_block_interval =
        static_cast<double>(collector.last_proposal().ticks) / static_cast<double>(m.blocks_proposed);
  }

  std::set<BlockId> canonical_union;
  std::optional<BlockId> common_tip;
  for (AgentId p : proposers) {
    const auto& node = static_cast<const chain::ProposerBehavior&>(sim.behavior(p)).node();
    const BlockId tip = node.tip();
    m.canonical_height[p.value] = node.tree().at(tip).height;
    if (!common_tip) {
      common_tip = tip;
    } else if (*common_tip != tip) {
      m.consistent = false;
    }
    for (const auto& b : node.canonical_chain()) canonical_union.insert(b->block_id);
  }

  double delay_sum = 0.0;
  std::uint64_t fully_propagated = 0;
  for (const BlockId& id : collector.proposals()) {
    if (!canonical_union.contains(id)) ++m.orphan_blocks;
    const auto& s = collector.stats(id);
    if (s.appended_by == proposers.size()) {
      delay_sum += static_cast<double>(s.last_append.ticks - s.proposed_at.ticks);
      ++fully_propagated;
    }
  }
  if (fully_propagated > 0) m.mean_propagation_delay = delay_sum / static_cast<double>(fully_propagated);

  if (options.on_finish) options.on_finish(sim);
  return RunResult{std::move(m), recorder.digest()};
}

}  // namespace agrsim::harness
