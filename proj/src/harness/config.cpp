#include "agrsim/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "agrsim/blockchain/block_tree.hpp"
#include "agrsim/overloaded.hpp"

namespace agrsim::harness {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError(prefix + key, "unknown key");
  }
}

std::uint64_t read_count(const json& obj, const char* key, const std::string& path, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

double read_number(const json& obj, const char* key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

LatencyModel read_latency(const json& v) {
  if (!v.is_object()) throw ConfigError("latency", "expected an object");
  if (!v.contains("kind") || !v.at("kind").is_string()) throw ConfigError("latency.kind", "expected a string");
  const std::string kind = v.at("kind").get<std::string>();
  if (kind == "constant") {
    reject_unknown_keys(v, {"kind", "ticks"}, "latency.");
    if (!v.contains("ticks")) throw ConfigError("latency.ticks", "required for constant latency");
    return ConstantLatency{read_count(v, "ticks", "latency.ticks", 0)};
  }
  if (kind == "uniform") {
    reject_unknown_keys(v, {"kind", "lo", "hi"}, "latency.");
    if (!v.contains("lo")) throw ConfigError("latency.lo", "required for uniform latency");
    if (!v.contains("hi")) throw ConfigError("latency.hi", "required for uniform latency");
    return UniformLatency{read_count(v, "lo", "latency.lo", 0), read_count(v, "hi", "latency.hi", 0)};
  }
  if (kind == "exponential") {
    reject_unknown_keys(v, {"kind", "mean"}, "latency.");
    if (!v.contains("mean")) throw ConfigError("latency.mean", "required for exponential latency");
    return ExponentialLatency{read_number(v, "mean", "latency.mean", 0.0)};
  }
  throw ConfigError("latency.kind", "expected one of constant, uniform, exponential");
}

ordered_json latency_to_json(const LatencyModel& latency) {
  return std::visit(overloaded{
                        [](const ConstantLatency& c) { return ordered_json{{"kind", "constant"}, {"ticks", c.ticks}}; },
                        [](const UniformLatency& u) {
                          return ordered_json{{"kind", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
                        },
                        [](const ExponentialLatency& e) { return ordered_json{{"kind", "exponential"}, {"mean", e.mean}}; },
                    },
                    latency);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (stop_time == 0) throw ConfigError("stop_time", "must be > 0");
  if (!std::isfinite(tx_rate) || tx_rate < 0.0) throw ConfigError("tx_rate", "must be a finite number >= 0");
  if (!std::isfinite(block_rate) || block_rate < 0.0) throw ConfigError("block_rate", "must be a finite number >= 0");
  if (num_proposers > 0 && block_rate == 0.0) throw ConfigError("block_rate", "must be > 0 when there are proposers");
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) throw ConfigError("drop_prob", "must lie in [0, 1]");
  if (const auto* u = std::get_if<UniformLatency>(&latency); u != nullptr && u->lo > u->hi) {
    throw ConfigError("latency.lo", "must not exceed latency.hi");
  }
  if (const auto* e = std::get_if<ExponentialLatency>(&latency);
      e != nullptr && (!std::isfinite(e->mean) || !(e->mean > 0.0))) {
    throw ConfigError("latency.mean", "must be a finite number > 0");
  }
  if (!chain::fork_choice_rule(fork_choice_rule)) {
    throw ConfigError("fork_choice_rule", "unknown rule '" + fork_choice_rule + "'");
  }
}

ExperimentConfig load_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "top-level value must be an object");
  reject_unknown_keys(doc,
                      {"seed", "stop_time", "num_clients", "num_proposers", "tx_rate", "block_rate", "latency",
                       "drop_prob", "max_txs_per_block", "fork_choice_rule"},
                      "");

  ExperimentConfig c;
  c.seed = read_count(doc, "seed", "seed", c.seed);
  c.stop_time = read_count(doc, "stop_time", "stop_time", c.stop_time);
  c.num_clients = read_count(doc, "num_clients", "num_clients", c.num_clients);
  c.num_proposers = read_count(doc, "num_proposers", "num_proposers", c.num_proposers);
  c.tx_rate = read_number(doc, "tx_rate", "tx_rate", c.tx_rate);
  c.block_rate = read_number(doc, "block_rate", "block_rate", c.block_rate);
  if (doc.contains("latency")) c.latency = read_latency(doc.at("latency"));
  c.drop_prob = read_number(doc, "drop_prob", "drop_prob", c.drop_prob);
  c.max_txs_per_block = read_count(doc, "max_txs_per_block", "max_txs_per_block", c.max_txs_per_block);
  if (doc.contains("fork_choice_rule")) {
    if (!doc.at("fork_choice_rule").is_string()) throw ConfigError("fork_choice_rule", "expected a string");
    c.fork_choice_rule = doc.at("fork_choice_rule").get<std::string>();
  }
  c.validate();
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_config(buf.str());
}

std::string config_to_json(const ExperimentConfig& c) {
  ordered_json doc = ordered_json::object();
  doc["seed"] = c.seed;
  doc["stop_time"] = c.stop_time;
  doc["num_clients"] = c.num_clients;
  doc["num_proposers"] = c.num_proposers;
  doc["tx_rate"] = c.tx_rate;
  doc["block_rate"] = c.block_rate;
  doc["latency"] = latency_to_json(c.latency);
  doc["drop_prob"] = c.drop_prob;
  doc["max_txs_per_block"] = c.max_txs_per_block;
  doc["fork_choice_rule"] = c.fork_choice_rule;
  return doc.dump(2);
}

}  // namespace agrsim::harness
