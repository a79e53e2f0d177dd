#ifndef AGRSIM_HARNESS_EXPERIMENT_HPP
#define AGRSIM_HARNESS_EXPERIMENT_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agrsim/harness/config.hpp"
#include "agrsim/simulation.hpp"

namespace agrsim::harness {

struct MetricsRecord {
  std::uint64_t seed = 0;
  std::uint64_t blocks_proposed = 0;
  /// Tip height of each proposer node, keyed by agent id.
  std::map<std::uint64_t, std::uint64_t> canonical_height;
  /// Proposed blocks that lie on no node's canonical chain at the end.
  std::uint64_t orphan_blocks = 0;
  double mean_block_interval = 0.0;
  /// Mean of (last node's append - proposal) over blocks every node appended.
  double mean_propagation_delay = 0.0;
  std::uint64_t dropped = 0;
  std::uint64_t undeliverable = 0;
  std::uint64_t stale_delivery = 0;
  std::uint64_t delivered = 0;
  std::uint64_t fired_events = 0;
  std::uint64_t txs_created = 0;
  bool consistent = true;

  std::uint64_t max_canonical_height() const;
  std::uint64_t min_canonical_height() const;

  bool operator==(const MetricsRecord&) const = default;
};

/// Named numeric view of a record, in export column order. `consistent` maps to 0/1.
std::vector<std::pair<std::string_view, double>> numeric_metrics(const MetricsRecord& m);

struct RunResult {
  MetricsRecord metrics;
  Digest trace_digest{};

  bool operator==(const RunResult&) const = default;
};

struct RunOptions {
  QueueKind queue = QueueKind::BinaryHeap;
  /// Receives the canonical trace, if set.
  std::ostream* trace_out = nullptr;
  std::function<void(const FiredEvent&)> on_event;
  std::function<void(const DeliveryRecord&)> on_delivery;
  /// Called once after the network is built, before the first event. The
  /// reference stays valid until on_finish returns, so observers may inspect it.
  std::function<void(const Simulation&)> on_start;
  /// Called once after the drain with the finished simulation (read-only inspection).
  std::function<void(const Simulation&)> on_finish;
  /// Safety bound on the drain phase.
  std::uint64_t max_drain_events = 1'000'000'000;
};

/// Thrown when the drain phase does not reach quiescence within its bound.
class DrainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds the network (one group with its environment agent, proposers
/// joining as "Node", clients as "Client"; proposers are spawned first),
/// runs to stop_time, then drains: no new proposals or transactions are
/// started past stop_time and the queue is run until empty.
///
/// Throws ConfigError for invalid configs and HandlerFault for aborted runs.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace agrsim::harness

#endif  // AGRSIM_HARNESS_EXPERIMENT_HPP
