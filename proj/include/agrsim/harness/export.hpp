#ifndef AGRSIM_HARNESS_EXPORT_HPP
#define AGRSIM_HARNESS_EXPORT_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "agrsim/harness/replicate.hpp"

namespace agrsim::harness {

/// Fixed CSV header shared by single runs and replication reports.
inline constexpr std::string_view kCsvHeader =
    "seed,blocks_proposed,orphan_blocks,mean_block_interval,mean_propagation_delay,consistent,"
    "max_canonical_height,min_canonical_height,dropped,undeliverable,stale_delivery,delivered,"
    "fired_events,txs_created,trace_digest,status";

class ExportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "json" or "csv"; anything else throws ExportError.
///
/// CSV of a run: header + one row. CSV of a report: header + one row per seed
/// (status "ok" or "failed") + one summary row holding the means, with "mean"
/// in the seed column and status "summary".
std::string export_metrics(const RunResult& run, std::string_view format);
std::string export_metrics(const ReplicationReport& report, std::string_view format);

/// Inverse of export_metrics(run, "json").
RunResult run_result_from_json(std::string_view json_text);

}  // namespace agrsim::harness

#endif  // AGRSIM_HARNESS_EXPORT_HPP
