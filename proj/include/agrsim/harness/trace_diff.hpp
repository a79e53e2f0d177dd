#ifndef AGRSIM_HARNESS_TRACE_DIFF_HPP
#define AGRSIM_HARNESS_TRACE_DIFF_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace agrsim::harness {

struct TraceDivergence {
  /// 1-based record (line) number of the first mismatch.
  std::size_t record = 0;
  /// The two lines at that record; absent where a trace has already ended.
  std::optional<std::string> line_a;
  std::optional<std::string> line_b;
};

struct TraceDiff {
  std::size_t records_compared = 0;
  std::optional<TraceDivergence> divergence;

  bool identical() const { return !divergence.has_value(); }
};

/// Compares two canonical traces record by record, stopping at the first
/// mismatch. Every line read is validated; a malformed one throws
/// TraceFormatError naming `label_a`/`label_b` and the line number.
TraceDiff diff_traces(std::istream& a, std::istream& b, const std::string& label_a = "a",
                      const std::string& label_b = "b");

TraceDiff diff_trace_files(const std::string& path_a, const std::string& path_b);

/// Human-readable verdict: "identical" or the divergence report.
std::string describe(const TraceDiff& diff);

}  // namespace agrsim::harness

#endif  // AGRSIM_HARNESS_TRACE_DIFF_HPP
