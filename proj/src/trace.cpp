#include "agrsim/trace.hpp"

#include <array>
#include <charconv>
#include <ostream>

namespace agrsim {

std::string format_trace_line(const FiredEvent& ev) {
  std::string line;
  line.reserve(48 + ev.tag.size());
  std::array<char, 24> buf{};
  for (std::uint64_t v : {ev.id.value, ev.fire_time.ticks, ev.seq, ev.target.value}) {
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    line.append(buf.data(), end);
    line.push_back(',');
  }
  line.append(ev.tag);
  line.push_back('\n');
  return line;
}

FiredEvent parse_trace_line(std::string_view line, std::size_t line_number) {
  FiredEvent ev;
  std::uint64_t fields[4] = {};
  std::string_view rest = line;
  for (int i = 0; i < 4; ++i) {
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos) throw TraceFormatError(line_number, "expected 5 comma-separated fields");
    const std::string_view field = rest.substr(0, comma);
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), fields[i]);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw TraceFormatError(line_number, "field " + std::to_string(i + 1) + " is not an unsigned integer");
    }
    rest.remove_prefix(comma + 1);
  }
  if (rest.empty() || rest.find(',') != std::string_view::npos) {
    throw TraceFormatError(line_number, "payload tag must be non-empty and comma-free");
  }
  ev.id = EventId{fields[0]};
  ev.fire_time = VirtualTime{fields[1]};
  ev.seq = fields[2];
  ev.target = AgentId{fields[3]};
  ev.tag = std::string(rest);
  return ev;
}

void TraceRecorder::record(const FiredEvent& ev) {
  const std::string line = format_trace_line(ev);
  hasher_.update(line);
  if (mirror_ != nullptr) *mirror_ << line;
  ++count_;
}

}  // namespace agrsim
