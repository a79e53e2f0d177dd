#include "agrsim/harness/replicate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace agrsim::harness {

std::size_t ReplicationReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(runs.begin(), runs.end(), [](const SeedOutcome& o) { return !o.result.has_value(); }));
}

std::vector<SummaryStat> summarize(const std::vector<SeedOutcome>& runs) {
  std::vector<std::vector<double>> columns;
  std::vector<std::string_view> names;
  for (const SeedOutcome& o : runs) {
    if (!o.result) continue;
    const auto values = numeric_metrics(o.result->metrics);
    if (names.empty()) {
      for (const auto& [name, v] : values) names.push_back(name);
      columns.resize(values.size());
    }
    for (std::size_t i = 0; i < values.size(); ++i) columns[i].push_back(values[i].second);
  }

  std::vector<SummaryStat> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& col = columns[i];
    SummaryStat s{names[i]};
    double sum = 0.0;
    for (double v : col) sum += v;
    s.mean = sum / static_cast<double>(col.size());
    s.min = *std::min_element(col.begin(), col.end());
    s.max = *std::max_element(col.begin(), col.end());
    if (col.size() > 1) {
      double sq = 0.0;
      for (double v : col) sq += (v - s.mean) * (v - s.mean);
      s.stddev = std::sqrt(sq / static_cast<double>(col.size() - 1));
    }
    out.push_back(s);
  }
  return out;
}

ReplicationReport replicate(const ExperimentConfig& config, const std::vector<std::uint64_t>& seeds,
                            const ReplicateOptions& options) {
  if (seeds.empty()) throw std::invalid_argument("replicate: at least one seed is required");
  config.validate();

  ReplicationReport report;
  report.config = config;
  report.runs.resize(seeds.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      SeedOutcome& slot = report.runs[i];
      slot.seed = seeds[i];
      ExperimentConfig c = config;
      c.seed = seeds[i];
      RunOptions run_options;
      run_options.queue = options.queue;
      try {
        slot.result = run_experiment(c, run_options);
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
    }
  };

  const unsigned threads = std::clamp<unsigned>(options.threads, 1, static_cast<unsigned>(seeds.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  report.summary = summarize(report.runs);
  return report;
}

}  // namespace agrsim::harness
