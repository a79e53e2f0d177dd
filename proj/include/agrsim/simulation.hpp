#ifndef AGRSIM_SIMULATION_HPP
#define AGRSIM_SIMULATION_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agrsim/kernel.hpp"
#include "agrsim/mediation.hpp"
#include "agrsim/membership.hpp"

namespace agrsim {

class Simulation;
class AgentBehavior;

/// An agent's handle on the world while one of its handlers runs.
///
/// Agents never touch each other: the only outward actions are scheduling
/// events for themselves and sending envelopes through a group's environment.
class AgentContext {
 public:
  AgentContext(Simulation& sim, AgentId self, RngStream& rng, const Envelope* envelope)
      : sim_(sim), self_(self), rng_(rng), envelope_(envelope) {}

  AgentId self() const { return self_; }
  VirtualTime now() const;
  RngStream& rng() { return rng_; }
  /// The message being handled, or nullptr for activation and local timers.
  const Envelope* envelope() const { return envelope_; }

  EventId schedule(Payload payload, Duration delay);
  bool cancel(EventId id);
  void send(GroupId group, Address address, Payload payload);
  void join(GroupId group, const RoleId& role);
  void leave(GroupId group, const RoleId& role);
  AgentId spawn(std::unique_ptr<AgentBehavior> behavior);
  GroupId create_group(std::unique_ptr<AgentBehavior> environment, MediationPolicy policy,
                       const std::vector<RoleId>& roles);
  void despawn();
  std::vector<AgentId> discover(GroupId group, const std::optional<RoleId>& role = std::nullopt) const;
  std::set<RoleId> roles_of(GroupId group) const;
  void set_global(const std::string& key, GlobalValue value);
  const GlobalValue* global(const std::string& key) const;

 private:
  Simulation& sim_;
  AgentId self_;
  RngStream& rng_;
  const Envelope* envelope_;
};

/// Handler contract for an agent. Handlers must be deterministic functions of
/// the agent's own state, the payload, and the agent's RngStream.
class AgentBehavior {
 public:
  virtual ~AgentBehavior() = default;
  virtual void on_activate(AgentContext&) {}
  virtual void on_event(AgentContext& ctx, const Payload& payload) = 0;
};

/// Environment behavior that ignores everything addressed to it.
class PassiveEnvironment final : public AgentBehavior {
 public:
  void on_event(AgentContext&, const Payload&) override {}
};

struct MediationCounters {
  std::uint64_t envelopes = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::uint64_t undeliverable = 0;
  std::uint64_t stale_delivery = 0;
  std::uint64_t consumed_by_environment = 0;
};

/// One completed delivery, as seen by an observer.
struct DeliveryRecord {
  EventId envelope_event;
  EventId delivery_event;
  AgentId sender;
  AgentId recipient;
  AgentId environment;
  GroupId group;
  VirtualTime send_time;
  VirtualTime delivered_at;
};

/// Kernel plus the Agent/Group/Role organization and its mediated messaging.
///
/// Agent ids ascend from 1 in spawn order. Each group is created together
/// with a fresh environment agent that holds the reserved "Environment" role
/// and mediates every message sent in that group. Trace tags produced here:
/// `activate`, `envelope:<tag>` (at the environment agent), `deliver:<tag>`
/// (at the recipient), and user timer tags verbatim.
class Simulation {
 public:
  explicit Simulation(std::uint64_t seed, QueueKind queue = QueueKind::BinaryHeap);
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  Kernel& kernel() { return kernel_; }
  const Kernel& kernel() const { return kernel_; }
  const Membership& membership() const { return membership_; }
  const MediationCounters& counters() const { return counters_; }

  /// Fresh agent; its on_activate is scheduled at the current time.
  AgentId spawn_agent(std::unique_ptr<AgentBehavior> behavior);
  GroupId create_group(std::unique_ptr<AgentBehavior> environment, MediationPolicy policy,
                       const std::vector<RoleId>& roles);
  void join(AgentId agent, GroupId group, const RoleId& role);
  void leave(AgentId agent, GroupId group, const RoleId& role);
  /// Removes the agent from every group; later events addressed to it are discarded.
  void despawn(AgentId agent);

  std::vector<AgentId> discover(AgentId caller, GroupId group, const std::optional<RoleId>& role = std::nullopt) const;
  std::set<RoleId> roles_of(AgentId agent, GroupId group) const;

  /// Hands an envelope to the group's environment agent (zero delay).
  /// NotMember if the sender is not in the group; RoleUnknown for an undeclared ToRole.
  void send(AgentId sender, GroupId group, Address address, Payload payload);

  bool exists(AgentId agent) const { return agent.value >= 1 && agent.value <= agents_.size(); }
  bool alive(AgentId agent) const { return exists(agent) && slot(agent).alive; }
  std::size_t agent_count() const { return agents_.size(); }
  AgentBehavior& behavior(AgentId agent) { return *slot(agent).behavior; }
  const AgentBehavior& behavior(AgentId agent) const { return *slot(agent).behavior; }
  const MediationPolicy& policy(GroupId group) const;

  void on_delivery(std::function<void(const DeliveryRecord&)> observer) { delivery_observer_ = std::move(observer); }

 private:
  friend class AgentContext;

  struct AgentSlot {
    std::unique_ptr<AgentBehavior> behavior;
    RngStream rng;
    bool alive = true;
  };

  AgentSlot& slot(AgentId agent) { return agents_.at(agent.value - 1); }
  const AgentSlot& slot(AgentId agent) const { return agents_.at(agent.value - 1); }
  void require_alive(AgentId agent) const;
  void dispatch(const ScheduledEvent& ev);
  void mediate_envelope(const ScheduledEvent& ev, AgentSlot& env_slot);

  Kernel kernel_;
  Membership membership_;
  std::deque<AgentSlot> agents_;
  std::map<GroupId, MediationPolicy> policies_;
  MediationCounters counters_;
  std::function<void(const DeliveryRecord&)> delivery_observer_;
};

}  // namespace agrsim

#endif  // AGRSIM_SIMULATION_HPP
