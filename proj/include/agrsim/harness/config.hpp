#ifndef AGRSIM_HARNESS_CONFIG_HPP
#define AGRSIM_HARNESS_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "agrsim/mediation.hpp"

namespace agrsim::harness {

/// Rejected experiment document. `path()` names the offending field
/// ("drop_prob", "latency.mean", ...); it is empty for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string path, const std::string& what)
      : std::runtime_error(path.empty() ? what : path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// One experiment. Defaults apply to every omitted key; see docs/config.md.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::uint64_t stop_time = 1'000'000;
  std::uint64_t num_clients = 4;
  std::uint64_t num_proposers = 4;
  double tx_rate = 1e-4;     // per client per tick
  double block_rate = 1e-5;  // per proposer per tick
  LatencyModel latency = ConstantLatency{100};
  double drop_prob = 0.0;
  std::uint64_t max_txs_per_block = 100;
  std::string fork_choice_rule = "longest-chain";

  /// Throws ConfigError on the first violated constraint.
  void validate() const;
  MediationPolicy mediation_policy() const { return MediationPolicy{latency, drop_prob}; }
};

/// Parses and validates a JSON document. Unknown keys are rejected.
ExperimentConfig load_config(std::string_view json_text);
ExperimentConfig load_config_file(const std::string& path);

/// Canonical JSON rendering (every field, fixed key order).
std::string config_to_json(const ExperimentConfig& config);

}  // namespace agrsim::harness

#endif  // AGRSIM_HARNESS_CONFIG_HPP
