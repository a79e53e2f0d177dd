#ifndef AGRSIM_TYPES_HPP
#define AGRSIM_TYPES_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace agrsim {

/// Simulated clock value in integer ticks (1 tick = 1 microsecond by convention).
struct VirtualTime {
  std::uint64_t ticks = 0;

  constexpr auto operator<=>(const VirtualTime&) const = default;
};

/// A span of virtual time, in ticks.
using Duration = std::uint64_t;

inline std::ostream& operator<<(std::ostream& os, VirtualTime t) { return os << t.ticks; }

template <class Tag>
struct StrongId {
  std::uint64_t value = 0;

  constexpr auto operator<=>(const StrongId&) const = default;
  constexpr explicit operator bool() const { return value != 0; }
};

template <class Tag>
std::ostream& operator<<(std::ostream& os, StrongId<Tag> id) {
  return os << id.value;
}

using AgentId = StrongId<struct AgentTag>;
using GroupId = StrongId<struct GroupTag>;
using EventId = StrongId<struct EventTag>;

/// Group-local functional position. Compared case-sensitively.
struct RoleId {
  std::string name;

  auto operator<=>(const RoleId&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const RoleId& r) { return os << r.name; }

/// Reserved role held by every group's mediating agent.
inline const RoleId kEnvironmentRole{"Environment"};

}  // namespace agrsim

template <class Tag>
struct std::hash<agrsim::StrongId<Tag>> {
  std::size_t operator()(agrsim::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

#endif  // AGRSIM_TYPES_HPP
