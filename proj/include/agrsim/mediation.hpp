#ifndef AGRSIM_MEDIATION_HPP
#define AGRSIM_MEDIATION_HPP

#include <cstdint>
#include <variant>
#include <vector>

#include "agrsim/membership.hpp"
#include "agrsim/payload.hpp"
#include "agrsim/rng.hpp"
#include "agrsim/types.hpp"

namespace agrsim {

struct ConstantLatency {
  Duration ticks = 0;
};

/// Integer latency drawn uniformly from [lo, hi].
struct UniformLatency {
  Duration lo = 0;
  Duration hi = 0;
};

/// round(-mean * ln(u)), u uniform in (0, 1].
struct ExponentialLatency {
  double mean = 1.0;
};

using LatencyModel = std::variant<ConstantLatency, UniformLatency, ExponentialLatency>;

/// How a group's environment treats messages in transit. Randomness comes
/// from the environment agent's own stream; the policy itself is seedless.
struct MediationPolicy {
  LatencyModel latency = ConstantLatency{0};
  double drop_prob = 0.0;

  /// Throws std::invalid_argument when lo > hi, mean <= 0, or drop_prob is outside [0, 1].
  void validate() const;
};

Duration sample_latency(const LatencyModel& latency, RngStream& rng);

struct ToAgent {
  AgentId agent;
};
struct ToRole {
  RoleId role;
};
struct Broadcast {};

using Address = std::variant<ToAgent, ToRole, Broadcast>;

struct Envelope {
  AgentId sender;
  GroupId group;
  Address address;
  Payload payload;
  VirtualTime send_time;
};

struct PlannedDelivery {
  AgentId recipient;
  Duration delay = 0;
};

struct MediationOutcome {
  std::vector<PlannedDelivery> deliveries;
  /// The envelope was addressed (also) to the environment agent itself.
  bool consumed_by_environment = false;
  std::uint64_t dropped = 0;
  std::uint64_t undeliverable = 0;
};

/// Recipients of an envelope at this instant, ascending:
/// ToAgent -> that member; ToRole -> holders of the role minus the sender;
/// Broadcast -> every member minus the sender and the environment agent.
/// A ToAgent target that is not a member yields an empty list.
std::vector<AgentId> resolve_recipients(const Membership& membership, const Envelope& envelope);

/// Applies the policy to one envelope. For each recipient in ascending id
/// order a drop draw is made (dropped iff u < drop_prob) and, if kept, a
/// latency draw. The environment agent never receives a scheduled delivery;
/// if it is a recipient the envelope is flagged as consumed instead.
MediationOutcome mediate(const Membership& membership, const MediationPolicy& policy, const Envelope& envelope,
                         RngStream& rng);

}  // namespace agrsim

#endif  // AGRSIM_MEDIATION_HPP
