#include "agrsim/simulation.hpp"

#include <stdexcept>

namespace agrsim {
namespace {

struct ActivateEvent {};

struct EnvelopeEvent {
  std::shared_ptr<const Envelope> envelope;
};

struct DeliveryEvent {
  std::shared_ptr<const Envelope> envelope;
  EventId envelope_event;
};

}  // namespace

VirtualTime AgentContext::now() const { return sim_.kernel_.now(); }

EventId AgentContext::schedule(Payload payload, Duration delay) {
  return sim_.kernel_.schedule(self_, std::move(payload), delay);
}

bool AgentContext::cancel(EventId id) { return sim_.kernel_.cancel(id); }

void AgentContext::send(GroupId group, Address address, Payload payload) {
  sim_.send(self_, group, std::move(address), std::move(payload));
}

void AgentContext::join(GroupId group, const RoleId& role) { sim_.join(self_, group, role); }

void AgentContext::leave(GroupId group, const RoleId& role) { sim_.leave(self_, group, role); }

AgentId AgentContext::spawn(std::unique_ptr<AgentBehavior> behavior) { return sim_.spawn_agent(std::move(behavior)); }

GroupId AgentContext::create_group(std::unique_ptr<AgentBehavior> environment, MediationPolicy policy,
                                   const std::vector<RoleId>& roles) {
  return sim_.create_group(std::move(environment), std::move(policy), roles);
}

void AgentContext::despawn() { sim_.despawn(self_); }

std::vector<AgentId> AgentContext::discover(GroupId group, const std::optional<RoleId>& role) const {
  return sim_.discover(self_, group, role);
}

std::set<RoleId> AgentContext::roles_of(GroupId group) const { return sim_.roles_of(self_, group); }

void AgentContext::set_global(const std::string& key, GlobalValue value) { sim_.kernel_.set_global(key, std::move(value)); }

const GlobalValue* AgentContext::global(const std::string& key) const { return sim_.kernel_.global(key); }

Simulation::Simulation(std::uint64_t seed, QueueKind queue) : kernel_(seed, queue) {
  kernel_.set_dispatcher([this](const ScheduledEvent& ev) { dispatch(ev); });
}

AgentId Simulation::spawn_agent(std::unique_ptr<AgentBehavior> behavior) {
  if (!behavior) throw std::invalid_argument("spawn_agent: null behavior");
  const AgentId id{agents_.size() + 1};
  agents_.push_back(AgentSlot{std::move(behavior), kernel_.derive_rng(id), true});
  kernel_.schedule(id, Payload::make("activate", ActivateEvent{}), 0);
  return id;
}

GroupId Simulation::create_group(std::unique_ptr<AgentBehavior> environment, MediationPolicy policy,
                                 const std::vector<RoleId>& roles) {
  if (!environment) throw std::invalid_argument("create_group: null environment behavior");
  try {
    policy.validate();
  } catch (const std::invalid_argument& e) {
    throw OrganizationError(OrgErrc::InvalidConfiguration, e.what());
  }
  // Registering first validates the vocabulary before any agent is spawned.
  const AgentId env_id{agents_.size() + 1};
  const GroupId group = membership_.add_group(env_id, roles);
  const AgentId spawned = spawn_agent(std::move(environment));
  if (spawned != env_id) throw std::logic_error("environment agent id mismatch");
  policies_.emplace(group, std::move(policy));
  return group;
}

void Simulation::require_alive(AgentId agent) const {
  if (!alive(agent)) throw OrganizationError(OrgErrc::UnknownAgent, "agent " + std::to_string(agent.value));
}

void Simulation::join(AgentId agent, GroupId group, const RoleId& role) {
  require_alive(agent);
  membership_.join(agent, group, role);
}

void Simulation::leave(AgentId agent, GroupId group, const RoleId& role) { membership_.leave(agent, group, role); }

void Simulation::despawn(AgentId agent) {
  require_alive(agent);
  membership_.remove_agent(agent);
  slot(agent).alive = false;
}

std::vector<AgentId> Simulation::discover(AgentId caller, GroupId group, const std::optional<RoleId>& role) const {
  return membership_.discover(caller, group, role);
}

std::set<RoleId> Simulation::roles_of(AgentId agent, GroupId group) const { return membership_.roles_of(agent, group); }

const MediationPolicy& Simulation::policy(GroupId group) const {
  auto it = policies_.find(group);
  if (it == policies_.end()) throw OrganizationError(OrgErrc::UnknownGroup, "group " + std::to_string(group.value));
  return it->second;
}

void Simulation::send(AgentId sender, GroupId group, Address address, Payload payload) {
  if (!membership_.has_group(group)) throw OrganizationError(OrgErrc::UnknownGroup, "group " + std::to_string(group.value));
  if (!alive(sender) || !membership_.is_member(sender, group)) {
    throw OrganizationError(OrgErrc::NotMember, "agent " + std::to_string(sender.value) +
                                                    " cannot send in group " + std::to_string(group.value));
  }
  if (const auto* to = std::get_if<ToRole>(&address); to != nullptr && !membership_.declares(group, to->role)) {
    throw OrganizationError(OrgErrc::RoleUnknown, "role '" + to->role.name + "' is not declared in group " +
                                                      std::to_string(group.value));
  }
  std::string tag = "envelope:";
  tag += payload.tag();
  auto envelope =
      std::make_shared<const Envelope>(Envelope{sender, group, std::move(address), std::move(payload), kernel_.now()});
  kernel_.schedule(membership_.environment_of(group), Payload::make(std::move(tag), EnvelopeEvent{std::move(envelope)}),
                   0);
}

void Simulation::dispatch(const ScheduledEvent& ev) {
  const auto* delivery = ev.payload.get<DeliveryEvent>();
  if (!alive(ev.target)) {
    if (delivery != nullptr) ++counters_.stale_delivery;
    return;
  }
  AgentSlot& target = slot(ev.target);

  if (ev.payload.holds<ActivateEvent>()) {
    AgentContext ctx(*this, ev.target, target.rng, nullptr);
    target.behavior->on_activate(ctx);
  } else if (ev.payload.holds<EnvelopeEvent>()) {
    mediate_envelope(ev, target);
  } else if (delivery != nullptr) {
    const Envelope& env = *delivery->envelope;
    if (!membership_.is_member(ev.target, env.group)) {
      ++counters_.stale_delivery;
      return;
    }
    ++counters_.delivered;
    if (delivery_observer_) {
      delivery_observer_(DeliveryRecord{delivery->envelope_event, ev.id, env.sender, ev.target,
                                        membership_.environment_of(env.group), env.group, env.send_time,
                                        ev.fire_time});
    }
    AgentContext ctx(*this, ev.target, target.rng, &env);
    target.behavior->on_event(ctx, env.payload);
  } else {
    AgentContext ctx(*this, ev.target, target.rng, nullptr);
    target.behavior->on_event(ctx, ev.payload);
  }
}

void Simulation::mediate_envelope(const ScheduledEvent& ev, AgentSlot& env_slot) {
  std::shared_ptr<const Envelope> envelope = ev.payload.get<EnvelopeEvent>()->envelope;
  ++counters_.envelopes;
  const MediationOutcome outcome = agrsim::mediate(membership_, policy(envelope->group), *envelope, env_slot.rng);
  counters_.dropped += outcome.dropped;
  counters_.undeliverable += outcome.undeliverable;

  if (!outcome.deliveries.empty()) {
    std::string tag = "deliver:";
    tag += envelope->payload.tag();
    for (const PlannedDelivery& d : outcome.deliveries) {
      kernel_.schedule(d.recipient, Payload::make(tag, DeliveryEvent{envelope, ev.id}), d.delay);
    }
  }
  if (outcome.consumed_by_environment) {
    ++counters_.consumed_by_environment;
    AgentContext ctx(*this, ev.target, env_slot.rng, envelope.get());
    env_slot.behavior->on_event(ctx, envelope->payload);
  }
}

}  // namespace agrsim
