#ifndef AGRSIM_HARNESS_REPLICATE_HPP
#define AGRSIM_HARNESS_REPLICATE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agrsim/harness/experiment.hpp"

namespace agrsim::harness {

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::optional<RunResult> result;  // absent when the run failed
  std::string error;
};

struct SummaryStat {
  std::string_view metric;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  /// Sample standard deviation; 0 with fewer than two successful runs.
  double stddev = 0.0;
};

struct ReplicationReport {
  ExperimentConfig config;
  /// One entry per requested seed, in request order.
  std::vector<SeedOutcome> runs;
  /// Over successful runs only, in numeric_metrics() order.
  std::vector<SummaryStat> summary;

  std::size_t failures() const;
};

struct ReplicateOptions {
  QueueKind queue = QueueKind::BinaryHeap;
  /// Runs are independent and may execute concurrently; results are merged by
  /// seed order regardless of completion order.
  unsigned threads = 1;
};

/// Runs `config` once per seed (the seed field is overridden). A failed run
/// is recorded in its slot; the remaining seeds still run.
ReplicationReport replicate(const ExperimentConfig& config, const std::vector<std::uint64_t>& seeds,
                            const ReplicateOptions& options = {});

std::vector<SummaryStat> summarize(const std::vector<SeedOutcome>& runs);

}  // namespace agrsim::harness

#endif  // AGRSIM_HARNESS_REPLICATE_HPP
