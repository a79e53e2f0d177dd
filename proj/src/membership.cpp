#include "agrsim/membership.hpp"

#include <algorithm>

namespace agrsim {

std::string_view to_string(OrgErrc code) {
  switch (code) {
    case OrgErrc::UnknownAgent: return "UnknownAgent";
    case OrgErrc::UnknownGroup: return "UnknownGroup";
    case OrgErrc::RoleUnknown: return "RoleUnknown";
    case OrgErrc::Forbidden: return "Forbidden";
    case OrgErrc::NotMember: return "NotMember";
    case OrgErrc::InvalidConfiguration: return "InvalidConfiguration";
  }
  return "?";
}

GroupId Membership::add_group(AgentId environment, const std::vector<RoleId>& roles) {
  if (roles.empty()) throw OrganizationError(OrgErrc::InvalidConfiguration, "a group needs at least one declared role");
  GroupState state;
  state.environment = environment;
  state.vocabulary.insert(kEnvironmentRole);
  for (const RoleId& r : roles) {
    if (r.name.empty()) throw OrganizationError(OrgErrc::InvalidConfiguration, "role names must be non-empty");
    if (!state.vocabulary.insert(r).second) {
      throw OrganizationError(OrgErrc::InvalidConfiguration, "duplicate role name '" + r.name + "'");
    }
  }
  state.holders[kEnvironmentRole].insert(environment);
  state.roles_by_agent[environment].insert(kEnvironmentRole);

  const GroupId id{next_group_++};
  groups_.emplace(id, std::move(state));
  return id;
}

const Membership::GroupState& Membership::group_state(GroupId group) const {
  auto it = groups_.find(group);
  if (it == groups_.end()) throw OrganizationError(OrgErrc::UnknownGroup, "group " + std::to_string(group.value));
  return it->second;
}

Membership::GroupState& Membership::group_state(GroupId group) {
  return const_cast<GroupState&>(std::as_const(*this).group_state(group));
}

void Membership::join(AgentId agent, GroupId group, const RoleId& role) {
  GroupState& g = group_state(group);
  if (!g.vocabulary.contains(role)) {
    throw OrganizationError(OrgErrc::RoleUnknown,
                            "role '" + role.name + "' is not declared in group " + std::to_string(group.value));
  }
  if (role == kEnvironmentRole && agent != g.environment) {
    throw OrganizationError(OrgErrc::Forbidden, "only the group's mediator may hold the Environment role");
  }
  g.holders[role].insert(agent);
  g.roles_by_agent[agent].insert(role);
}

void Membership::leave(AgentId agent, GroupId group, const RoleId& role) {
  GroupState& g = group_state(group);
  if (role == kEnvironmentRole && agent == g.environment) {
    throw OrganizationError(OrgErrc::Forbidden, "a group's mediator cannot leave the Environment role");
  }
  auto held = g.roles_by_agent.find(agent);
  if (held == g.roles_by_agent.end() || held->second.erase(role) == 0) return;
  if (held->second.empty()) g.roles_by_agent.erase(held);
  auto holders = g.holders.find(role);
  holders->second.erase(agent);
  if (holders->second.empty()) g.holders.erase(holders);
}

void Membership::remove_agent(AgentId agent) {
  if (mediates_any(agent)) throw OrganizationError(OrgErrc::Forbidden, "cannot remove a group's mediator");
  for (auto& [id, g] : groups_) {
    auto held = g.roles_by_agent.find(agent);
    if (held == g.roles_by_agent.end()) continue;
    for (const RoleId& r : held->second) {
      auto holders = g.holders.find(r);
      holders->second.erase(agent);
      if (holders->second.empty()) g.holders.erase(holders);
    }
    g.roles_by_agent.erase(held);
  }
}

std::vector<AgentId> Membership::members(GroupId group, const std::optional<RoleId>& role) const {
  const GroupState& g = group_state(group);
  std::vector<AgentId> out;
  if (role) {
    auto it = g.holders.find(*role);
    if (it != g.holders.end()) out.assign(it->second.begin(), it->second.end());
  } else {
    out.reserve(g.roles_by_agent.size());
    for (const auto& [agent, roles] : g.roles_by_agent) out.push_back(agent);
  }
  return out;
}

std::vector<AgentId> Membership::discover(AgentId caller, GroupId group, const std::optional<RoleId>& role) const {
  if (!is_member(caller, group)) {
    throw OrganizationError(OrgErrc::NotMember, "agent " + std::to_string(caller.value) + " is not a member of group " +
                                                    std::to_string(group.value));
  }
  std::vector<AgentId> out = members(group, role);
  out.erase(std::remove(out.begin(), out.end(), caller), out.end());
  return out;
}

std::set<RoleId> Membership::roles_of(AgentId agent, GroupId group) const {
  auto git = groups_.find(group);
  if (git == groups_.end()) return {};
  auto it = git->second.roles_by_agent.find(agent);
  return it == git->second.roles_by_agent.end() ? std::set<RoleId>{} : it->second;
}

bool Membership::is_member(AgentId agent, GroupId group) const {
  auto git = groups_.find(group);
  return git != groups_.end() && git->second.roles_by_agent.contains(agent);
}

bool Membership::declares(GroupId group, const RoleId& role) const { return group_state(group).vocabulary.contains(role); }

AgentId Membership::environment_of(GroupId group) const { return group_state(group).environment; }

bool Membership::mediates_any(AgentId agent) const {
  return std::any_of(groups_.begin(), groups_.end(), [agent](const auto& kv) { return kv.second.environment == agent; });
}

const std::set<RoleId>& Membership::declared_roles(GroupId group) const { return group_state(group).vocabulary; }

std::vector<GroupId> Membership::groups() const {
  std::vector<GroupId> out;
  for (const auto& [id, g] : groups_) out.push_back(id);
  return out;
}

std::vector<MembershipTriple> Membership::triples() const {
  std::vector<MembershipTriple> out;
  for (const auto& [id, g] : groups_) {
    for (const auto& [agent, roles] : g.roles_by_agent) {
      for (const RoleId& r : roles) out.push_back({agent, id, r});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace agrsim
