#include "agrsim/mediation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "agrsim/overloaded.hpp"

namespace agrsim {

void MediationPolicy::validate() const {
  if (!(drop_prob >= 0.0 && drop_prob <= 1.0)) throw std::invalid_argument("drop_prob must lie in [0, 1]");
  std::visit(overloaded{
                 [](const ConstantLatency&) {},
                 [](const UniformLatency& u) {
                   if (u.lo > u.hi) throw std::invalid_argument("uniform latency requires lo <= hi");
                 },
                 [](const ExponentialLatency& e) {
                   if (!(e.mean > 0.0) || !std::isfinite(e.mean)) {
                     throw std::invalid_argument("exponential latency requires a finite mean > 0");
                   }
                 },
             },
             latency);
}

Duration sample_latency(const LatencyModel& latency, RngStream& rng) {
  return std::visit(overloaded{
                        [](const ConstantLatency& c) -> Duration { return c.ticks; },
                        [&rng](const UniformLatency& u) -> Duration { return rng.uniform_int(u.lo, u.hi); },
                        [&rng](const ExponentialLatency& e) -> Duration {
                          const double x = std::round(-e.mean * std::log(rng.uniform_open_closed()));
                          if (x >= 0x1.0p64) return std::numeric_limits<Duration>::max();
                          return static_cast<Duration>(x);
                        },
                    },
                    latency);
}

std::vector<AgentId> resolve_recipients(const Membership& membership, const Envelope& envelope) {
  return std::visit(overloaded{
                        [&](const ToAgent& to) -> std::vector<AgentId> {
                          if (!membership.is_member(to.agent, envelope.group)) return {};
                          return {to.agent};
                        },
                        [&](const ToRole& to) {
                          auto out = membership.members(envelope.group, to.role);
                          out.erase(std::remove(out.begin(), out.end(), envelope.sender), out.end());
                          return out;
                        },
                        [&](const Broadcast&) {
                          const AgentId env = membership.environment_of(envelope.group);
                          auto out = membership.members(envelope.group);
                          out.erase(std::remove_if(out.begin(), out.end(),
                                                   [&](AgentId a) { return a == envelope.sender || a == env; }),
                                    out.end());
                          return out;
                        },
                    },
                    envelope.address);
}

MediationOutcome mediate(const Membership& membership, const MediationPolicy& policy, const Envelope& envelope,
                         RngStream& rng) {
  MediationOutcome outcome;
  const std::vector<AgentId> recipients = resolve_recipients(membership, envelope);
  if (recipients.empty() && std::holds_alternative<ToAgent>(envelope.address)) {
    outcome.undeliverable = 1;
    return outcome;
  }

  const AgentId env = membership.environment_of(envelope.group);
  outcome.deliveries.reserve(recipients.size());
  for (AgentId r : recipients) {
    if (r == env) {
      outcome.consumed_by_environment = true;
      continue;
    }
    if (rng.uniform01() < policy.drop_prob) {
      ++outcome.dropped;
      continue;
    }
    outcome.deliveries.push_back({r, sample_latency(policy.latency, rng)});
  }
  return outcome;
}

}  // namespace agrsim
