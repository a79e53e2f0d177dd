#ifndef AGRSIM_MEMBERSHIP_HPP
#define AGRSIM_MEMBERSHIP_HPP

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "agrsim/types.hpp"

namespace agrsim {

enum class OrgErrc {
  UnknownAgent,
  UnknownGroup,
  RoleUnknown,
  Forbidden,
  NotMember,
  InvalidConfiguration,
};

std::string_view to_string(OrgErrc code);

class OrganizationError : public std::runtime_error {
 public:
  OrganizationError(OrgErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  OrgErrc code() const { return code_; }

 private:
  OrgErrc code_;
};

struct MembershipTriple {
  AgentId agent;
  GroupId group;
  RoleId role;

  auto operator<=>(const MembershipTriple&) const = default;
};

/// The (agent, group, role) relation of the Agent/Group/Role model.
///
/// Every group has a fixed role vocabulary declared at creation, which always
/// contains the reserved "Environment" role, held by exactly one agent: the
/// group's mediator. Listing order is ascending agent id everywhere.
class Membership {
 public:
  /// Registers a group mediated by `environment`. Throws InvalidConfiguration
  /// on an empty vocabulary, an empty role name, or a duplicate (including a
  /// user-declared "Environment").
  GroupId add_group(AgentId environment, const std::vector<RoleId>& roles);

  /// Idempotent. RoleUnknown for undeclared roles; Forbidden for any attempt to
  /// take the "Environment" role other than by the group's own mediator.
  void join(AgentId agent, GroupId group, const RoleId& role);

  /// No-op for absent triples. Forbidden for the mediator's "Environment" triple.
  void leave(AgentId agent, GroupId group, const RoleId& role);

  /// Drops every triple of `agent`. Forbidden if it mediates any group.
  void remove_agent(AgentId agent);

  /// Co-members of `caller` (optionally restricted to one role), caller excluded.
  /// NotMember if the caller belongs to no role of the group.
  std::vector<AgentId> discover(AgentId caller, GroupId group, const std::optional<RoleId>& role) const;

  /// All members (or holders of `role`), without the caller check.
  std::vector<AgentId> members(GroupId group, const std::optional<RoleId>& role = std::nullopt) const;

  std::set<RoleId> roles_of(AgentId agent, GroupId group) const;
  bool is_member(AgentId agent, GroupId group) const;
  bool has_group(GroupId group) const { return groups_.contains(group); }
  bool declares(GroupId group, const RoleId& role) const;
  AgentId environment_of(GroupId group) const;
  bool mediates_any(AgentId agent) const;
  const std::set<RoleId>& declared_roles(GroupId group) const;
  std::vector<GroupId> groups() const;

  /// Full relation, sorted. Intended for invariant checks.
  std::vector<MembershipTriple> triples() const;

 private:
  struct GroupState {
    AgentId environment;
    std::set<RoleId> vocabulary;
    std::map<RoleId, std::set<AgentId>> holders;
    std::map<AgentId, std::set<RoleId>> roles_by_agent;
  };

  const GroupState& group_state(GroupId group) const;
  GroupState& group_state(GroupId group);

  std::map<GroupId, GroupState> groups_;
  std::uint64_t next_group_ = 1;
};

}  // namespace agrsim

#endif  // AGRSIM_MEMBERSHIP_HPP
