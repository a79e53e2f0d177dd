#include "agrsim/harness/trace_diff.hpp"

#include <fstream>
#include <istream>

#include "agrsim/trace.hpp"

namespace agrsim::harness {
namespace {

std::optional<std::string> next_record(std::istream& in, std::size_t line_number, const std::string& label) {
  std::string line;
  if (!std::getline(in, line)) return std::nullopt;
  try {
    parse_trace_line(line, line_number);
  } catch (const TraceFormatError& e) {
    throw TraceFormatError(line_number, label + ": " + e.what());
  }
  return line;
}

}  // namespace

TraceDiff diff_traces(std::istream& a, std::istream& b, const std::string& label_a, const std::string& label_b) {
  TraceDiff diff;
  for (std::size_t record = 1;; ++record) {
    auto la = next_record(a, record, label_a);
    auto lb = next_record(b, record, label_b);
    if (!la && !lb) break;
    if (la != lb) {
      diff.divergence = TraceDivergence{record, std::move(la), std::move(lb)};
      break;
    }
    ++diff.records_compared;
  }
  return diff;
}

TraceDiff diff_trace_files(const std::string& path_a, const std::string& path_b) {
  std::ifstream a(path_a, std::ios::binary);
  if (!a) throw std::runtime_error("cannot open trace file '" + path_a + "'");
  std::ifstream b(path_b, std::ios::binary);
  if (!b) throw std::runtime_error("cannot open trace file '" + path_b + "'");
  return diff_traces(a, b, path_a, path_b);
}

std::string describe(const TraceDiff& diff) {
  if (diff.identical()) return "identical (" + std::to_string(diff.records_compared) + " records)";
  const TraceDivergence& d = *diff.divergence;
  std::string out = "diverged at record " + std::to_string(d.record) + "\n";
  out += "  a: " + d.line_a.value_or("<end of trace>") + "\n";
  out += "  b: " + d.line_b.value_or("<end of trace>");
  return out;
}

}  // namespace agrsim::harness
