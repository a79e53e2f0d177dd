#ifndef AGRSIM_TRACE_HPP
#define AGRSIM_TRACE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "agrsim/sha256.hpp"
#include "agrsim/types.hpp"

namespace agrsim {

/// What the kernel records for each fired event.
struct FiredEvent {
  EventId id;
  VirtualTime fire_time;
  std::uint64_t seq = 0;
  AgentId target;
  std::string tag;

  bool operator==(const FiredEvent&) const = default;
};

/// Canonical trace line: `event_id,fire_time,seq,target,payload_tag\n`
/// (decimal integers, no padding, no spaces).
std::string format_trace_line(const FiredEvent& ev);

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses one canonical line (without the trailing newline).
FiredEvent parse_trace_line(std::string_view line, std::size_t line_number);

/// Accumulates the trace digest and optionally mirrors the trace to a stream.
///
/// The digest is SHA-256 over the concatenation of every canonical line,
/// newline included.
class TraceRecorder {
 public:
  explicit TraceRecorder(std::ostream* mirror = nullptr) : mirror_(mirror) {}

  void record(const FiredEvent& ev);
  Digest digest() const { return hasher_.peek(); }
  std::uint64_t count() const { return count_; }

 private:
  Sha256 hasher_;
  std::ostream* mirror_;
  std::uint64_t count_ = 0;
};

}  // namespace agrsim

#endif  // AGRSIM_TRACE_HPP
