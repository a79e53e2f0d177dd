#include "agrsim/harness/export.hpp"

#include <array>
#include <charconv>

#include <json.hpp>

namespace agrsim::harness {
namespace {

using nlohmann::ordered_json;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void require_format(std::string_view format) {
  if (format != "json" && format != "csv") {
    throw ExportError("unknown export format '" + std::string(format) + "' (expected json or csv)");
  }
}

ordered_json run_to_json(const RunResult& run) {
  const MetricsRecord& m = run.metrics;
  ordered_json j;
  j["seed"] = m.seed;
  j["blocks_proposed"] = m.blocks_proposed;
  j["orphan_blocks"] = m.orphan_blocks;
  j["mean_block_interval"] = m.mean_block_interval;
  j["mean_propagation_delay"] = m.mean_propagation_delay;
  j["consistent"] = m.consistent;
  ordered_json heights = ordered_json::object();
  for (const auto& [agent, h] : m.canonical_height) heights[std::to_string(agent)] = h;
  j["canonical_height"] = std::move(heights);
  j["dropped"] = m.dropped;
  j["undeliverable"] = m.undeliverable;
  j["stale_delivery"] = m.stale_delivery;
  j["delivered"] = m.delivered;
  j["fired_events"] = m.fired_events;
  j["txs_created"] = m.txs_created;
  j["trace_digest"] = to_hex(run.trace_digest);
  return j;
}

std::string csv_row(const RunResult& run) {
  const MetricsRecord& m = run.metrics;
  std::string row;
  auto add = [&row](const std::string& field) {
    if (!row.empty()) row.push_back(',');
    row += field;
  };
  row = std::to_string(m.seed);
  add(std::to_string(m.blocks_proposed));
  add(std::to_string(m.orphan_blocks));
  add(format_double(m.mean_block_interval));
  add(format_double(m.mean_propagation_delay));
  add(m.consistent ? "true" : "false");
  add(std::to_string(m.max_canonical_height()));
  add(std::to_string(m.min_canonical_height()));
  add(std::to_string(m.dropped));
  add(std::to_string(m.undeliverable));
  add(std::to_string(m.stale_delivery));
  add(std::to_string(m.delivered));
  add(std::to_string(m.fired_events));
  add(std::to_string(m.txs_created));
  add(to_hex(run.trace_digest));
  add("ok");
  return row;
}

}  // namespace

std::string export_metrics(const RunResult& run, std::string_view format) {
  require_format(format);
  if (format == "json") return run_to_json(run).dump(2) + "\n";
  return std::string(kCsvHeader) + "\n" + csv_row(run) + "\n";
}

std::string export_metrics(const ReplicationReport& report, std::string_view format) {
  require_format(format);
  if (format == "json") {
    ordered_json j;
    j["config"] = ordered_json::parse(config_to_json(report.config));
    ordered_json runs = ordered_json::array();
    for (const SeedOutcome& o : report.runs) {
      if (o.result) {
        ordered_json r = run_to_json(*o.result);
        r["status"] = "ok";
        runs.push_back(std::move(r));
      } else {
        runs.push_back(ordered_json{{"seed", o.seed}, {"status", "failed"}, {"error", o.error}});
      }
    }
    j["runs"] = std::move(runs);
    ordered_json summary = ordered_json::object();
    for (const SummaryStat& s : report.summary) {
      summary[std::string(s.metric)] = {{"mean", s.mean}, {"min", s.min}, {"max", s.max}, {"stddev", s.stddev}};
    }
    j["summary"] = std::move(summary);
    return j.dump(2) + "\n";
  }

  std::string out(kCsvHeader);
  out += "\n";
  for (const SeedOutcome& o : report.runs) {
    if (o.result) {
      out += csv_row(*o.result) + "\n";
    } else {
      out += std::to_string(o.seed) + ",,,,,,,,,,,,,,,failed\n";
    }
  }
  // Summary row: means in the numeric columns; the digest column stays empty.
  auto mean_of = [&](std::string_view metric) -> std::string {
    for (const SummaryStat& s : report.summary) {
      if (s.metric == metric) return format_double(s.mean);
    }
    return "";
  };
  out += "mean";
  for (std::string_view metric : {"blocks_proposed", "orphan_blocks", "mean_block_interval", "mean_propagation_delay",
                                  "consistent", "max_canonical_height", "min_canonical_height", "dropped",
                                  "undeliverable", "stale_delivery", "delivered", "fired_events", "txs_created"}) {
    out += "," + mean_of(metric);
  }
  out += ",,summary\n";
  return out;
}

RunResult run_result_from_json(std::string_view json_text) {
  const auto j = nlohmann::json::parse(json_text);
  RunResult r;
  MetricsRecord& m = r.metrics;
  m.seed = j.at("seed").get<std::uint64_t>();
  m.blocks_proposed = j.at("blocks_proposed").get<std::uint64_t>();
  m.orphan_blocks = j.at("orphan_blocks").get<std::uint64_t>();
  m.mean_block_interval = j.at("mean_block_interval").get<double>();
  m.mean_propagation_delay = j.at("mean_propagation_delay").get<double>();
  m.consistent = j.at("consistent").get<bool>();
  for (const auto& [agent, h] : j.at("canonical_height").items()) {
    m.canonical_height[std::stoull(agent)] = h.get<std::uint64_t>();
  }
  m.dropped = j.at("dropped").get<std::uint64_t>();
  m.undeliverable = j.at("undeliverable").get<std::uint64_t>();
  m.stale_delivery = j.at("stale_delivery").get<std::uint64_t>();
  m.delivered = j.at("delivered").get<std::uint64_t>();
  m.fired_events = j.at("fired_events").get<std::uint64_t>();
  m.txs_created = j.at("txs_created").get<std::uint64_t>();
  const auto digest = digest_from_hex(j.at("trace_digest").get<std::string>());
  if (!digest) throw std::invalid_argument("trace_digest is not a 64-digit hex string");
  r.trace_digest = *digest;
  return r;
}

}  // namespace agrsim::harness
