#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "agrsim/harness/export.hpp"
#include "agrsim/harness/trace_diff.hpp"

namespace agrsim::cli {
namespace {

enum class Level { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// AGRSIM_LOG accepts a level name or 0-3; -v raises the level once per flag.
Level level_from_env() {
  const char* raw = std::getenv("AGRSIM_LOG");
  if (raw == nullptr) return Level::Warn;
  const std::string v(raw);
  if (v == "error" || v == "0") return Level::Error;
  if (v == "warn" || v == "1") return Level::Warn;
  if (v == "info" || v == "2") return Level::Info;
  if (v == "debug" || v == "3") return Level::Debug;
  return Level::Warn;
}

class Log {
 public:
  Log(std::ostream& err, Level level) : err_(err), level_(level) {}
  void error(const std::string& msg) const { err_ << "agrsim: error: " << msg << "\n"; }
  void info(const std::string& msg) const {
    if (level_ >= Level::Info) err_ << "agrsim: " << msg << "\n";
  }
  void debug(const std::string& msg) const {
    if (level_ >= Level::Debug) err_ << "agrsim: " << msg << "\n";
  }

 private:
  std::ostream& err_;
  Level level_;
};

struct Invocation {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::uint64_t> seeds;
  std::string output_path;
  std::string format = "json";
  std::string trace_out;
  std::string trace_a;
  std::string trace_b;
};

// Writes to output_path if set, else to `out`.
void emit(const std::string& text, const std::string& output_path, std::ostream& out) {
  if (output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(output_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write output file '" + output_path + "'");
  f << text;
}

int do_run(const Invocation& inv, std::ostream& out, const Log& log) {
  harness::ExperimentConfig config = harness::load_config_file(inv.config_path);
  if (inv.seed) config.seed = *inv.seed;
  log.debug("config: " + harness::config_to_json(config));

  std::ofstream trace_file;
  harness::RunOptions options;
  if (!inv.trace_out.empty()) {
    trace_file.open(inv.trace_out, std::ios::binary);
    if (!trace_file) throw harness::ConfigError("", "cannot open trace output '" + inv.trace_out + "'");
    options.trace_out = &trace_file;
  }
  const harness::RunResult result = harness::run_experiment(config, options);
  log.info("seed " + std::to_string(config.seed) + ": " + std::to_string(result.metrics.fired_events) +
           " events, digest " + to_hex(result.trace_digest));
  emit(harness::export_metrics(result, inv.format), inv.output_path, out);
  return kExitOk;
}

int do_replicate(const Invocation& inv, std::ostream& out, const Log& log) {
  harness::ExperimentConfig config = harness::load_config_file(inv.config_path);
  harness::ReplicateOptions options;
  options.threads = std::max(1u, std::thread::hardware_concurrency());
  const harness::ReplicationReport report = harness::replicate(config, inv.seeds, options);
  for (const auto& run : report.runs) {
    if (run.result) {
      log.info("seed " + std::to_string(run.seed) + ": digest " + to_hex(run.result->trace_digest));
    } else {
      log.error("seed " + std::to_string(run.seed) + " failed: " + run.error);
    }
  }
  emit(harness::export_metrics(report, inv.format), inv.output_path, out);
  return report.failures() == 0 ? kExitOk : kExitRunFailure;
}

int do_diff(const Invocation& inv, std::ostream& out) {
  const harness::TraceDiff diff = harness::diff_trace_files(inv.trace_a, inv.trace_b);
  out << harness::describe(diff) << "\n";
  return diff.identical() ? kExitOk : kExitRunFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Agent/Group/Role blockchain simulator"};
  app.require_subcommand(1);
  Invocation inv;
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "Increase log verbosity (repeatable)");

  auto* run = app.add_subcommand("run", "Run one experiment and print its metrics");
  run->add_option("--config", inv.config_path, "Experiment config (JSON)")->required();
  run->add_option("--seed", inv.seed, "Override the config's seed");
  run->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--output", inv.output_path, "Write metrics here instead of stdout");
  run->add_option("--trace-out", inv.trace_out, "Write the canonical event trace here");

  auto* rep = app.add_subcommand("replicate", "Run one config under several seeds");
  rep->add_option("--config", inv.config_path, "Experiment config (JSON)")->required();
  rep->add_option("--seeds", inv.seeds, "Comma-separated seeds")->required()->delimiter(',');
  rep->add_option("--format", inv.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  rep->add_option("--output", inv.output_path, "Write the report here instead of stdout");

  auto* diff = app.add_subcommand("diff-trace", "Compare two canonical traces");
  diff->add_option("trace_a", inv.trace_a, "First trace")->required();
  diff->add_option("trace_b", inv.trace_b, "Second trace")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Prints help for --help (to out) or the parse error (to err).
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  Level level = level_from_env();
  level = static_cast<Level>(std::min(3, static_cast<int>(level) + verbosity));
  const Log log(err, level);

  try {
    if (run->parsed()) return do_run(inv, out, log);
    if (rep->parsed()) return do_replicate(inv, out, log);
    return do_diff(inv, out);
  } catch (const harness::ConfigError& e) {
    log.error(e.what());
    return kExitUsage;
  } catch (const TraceFormatError& e) {
    log.error(e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    log.error(e.what());
    return diff->parsed() ? kExitUsage : kExitRunFailure;
  }
}

}  // namespace agrsim::cli
