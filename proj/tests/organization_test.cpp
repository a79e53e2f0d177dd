#include <gtest/gtest.h>

#include <random>
#include <set>
#include <tuple>

#include "agrsim/simulation.hpp"

namespace agrsim {
namespace {

const RoleId kMiner{"Miner"};
const RoleId kClient{"Client"};

class Idle final : public AgentBehavior {
 public:
  void on_event(AgentContext&, const Payload&) override {}
};

std::unique_ptr<AgentBehavior> idle() { return std::make_unique<Idle>(); }

OrgErrc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const OrganizationError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an OrganizationError";
  return OrgErrc::InvalidConfiguration;
}

TEST(Organization, SpawnIdsAscendFromOne) {
  Simulation sim(1);
  EXPECT_EQ(sim.spawn_agent(idle()), AgentId{1});
  EXPECT_EQ(sim.spawn_agent(idle()), AgentId{2});
}

TEST(Organization, SpawnSchedulesActivationNow) {
  Simulation sim(1);
  std::vector<FiredEvent> trace;
  sim.kernel().add_observer([&](const FiredEvent& e) { trace.push_back(e); });
  sim.kernel().run_until(VirtualTime{40});
  const AgentId a = sim.spawn_agent(idle());
  sim.kernel().run();
  ASSERT_EQ(trace.size(), 1u);
  EXPECT_EQ(trace[0].target, a);
  EXPECT_EQ(trace[0].tag, "activate");
  EXPECT_EQ(trace[0].fire_time, VirtualTime{40});
}

TEST(Organization, CreateGroupAddsExactlyOneEnvironment) {
  Simulation sim(1);
  const AgentId before = sim.spawn_agent(idle());
  const GroupId g = sim.create_group(idle(), {}, {kMiner, kClient});
  const AgentId env = sim.membership().environment_of(g);
  EXPECT_NE(env, before);
  const auto holders = sim.membership().members(g, kEnvironmentRole);
  ASSERT_EQ(holders.size(), 1u);
  EXPECT_EQ(holders[0], env);
  EXPECT_EQ(sim.roles_of(env, g), std::set<RoleId>{kEnvironmentRole});
}

TEST(Organization, TwoGroupsTwoEnvironments) {
  Simulation sim(1);
  const GroupId g1 = sim.create_group(idle(), {}, {kMiner});
  const GroupId g2 = sim.create_group(idle(), {}, {kMiner});
  EXPECT_NE(sim.membership().environment_of(g1), sim.membership().environment_of(g2));
}

TEST(Organization, CreateGroupRejectsBadVocabulary) {
  Simulation sim(1);
  EXPECT_EQ(code_of([&] { sim.create_group(idle(), {}, {}); }), OrgErrc::InvalidConfiguration);
  EXPECT_EQ(code_of([&] { sim.create_group(idle(), {}, {kMiner, kMiner}); }), OrgErrc::InvalidConfiguration);
  EXPECT_EQ(code_of([&] { sim.create_group(idle(), {}, {kEnvironmentRole}); }), OrgErrc::InvalidConfiguration);
  EXPECT_EQ(code_of([&] { sim.create_group(idle(), {}, {RoleId{""}}); }), OrgErrc::InvalidConfiguration);
  // A failed creation spawns nothing.
  EXPECT_EQ(sim.agent_count(), 0u);
}

TEST(Organization, JoinAndRolesOf) {
  Simulation sim(1);
  const GroupId g = sim.create_group(idle(), {}, {kMiner, kClient});
  const AgentId a = sim.spawn_agent(idle());
  EXPECT_TRUE(sim.roles_of(a, g).empty());
  sim.join(a, g, kMiner);
  EXPECT_EQ(sim.roles_of(a, g), std::set<RoleId>{kMiner});
  sim.join(a, g, kClient);
  EXPECT_EQ(sim.roles_of(a, g), (std::set<RoleId>{kMiner, kClient}));
  const auto triples = sim.membership().triples();
  sim.join(a, g, kMiner);
  EXPECT_EQ(sim.membership().triples(), triples);
}

TEST(Organization, RoleNamesAreCaseSensitive) {
  Simulation sim(1);
  const GroupId g = sim.create_group(idle(), {}, {kMiner});
  const AgentId a = sim.spawn_agent(idle());
  EXPECT_EQ(code_of([&] { sim.join(a, g, RoleId{"miner"}); }), OrgErrc::RoleUnknown);
}

TEST(Organization, JoinErrors) {
  Simulation sim(1);
  const GroupId g1 = sim.create_group(idle(), {}, {kMiner});
  const GroupId g2 = sim.create_group(idle(), {}, {kMiner});
  const AgentId a = sim.spawn_agent(idle());
  EXPECT_EQ(code_of([&] { sim.join(a, g1, RoleId{"Oracle"}); }), OrgErrc::RoleUnknown);
  EXPECT_EQ(code_of([&] { sim.join(sim.membership().environment_of(g2), g1, kEnvironmentRole); }),
            OrgErrc::Forbidden);
  EXPECT_EQ(code_of([&] { sim.join(a, g1, kEnvironmentRole); }), OrgErrc::Forbidden);
  EXPECT_EQ(code_of([&] { sim.join(AgentId{77}, g1, kMiner); }), OrgErrc::UnknownAgent);
  EXPECT_EQ(code_of([&] { sim.join(a, GroupId{77}, kMiner); }), OrgErrc::UnknownGroup);
}

TEST(Organization, LeaveSemantics) {
  Simulation sim(1);
  const GroupId g = sim.create_group(idle(), {}, {kMiner});
  const AgentId a = sim.spawn_agent(idle());
  const AgentId b = sim.spawn_agent(idle());
  sim.join(a, g, kMiner);
  sim.join(b, g, kMiner);
  sim.leave(a, g, kMiner);
  EXPECT_TRUE(sim.discover(b, g, kMiner).empty());
  EXPECT_NO_THROW(sim.leave(a, g, kMiner));
  const AgentId env = sim.membership().environment_of(g);
  EXPECT_EQ(code_of([&] { sim.leave(env, g, kEnvironmentRole); }), OrgErrc::Forbidden);
}

TEST(Organization, DiscoverExamples) {
  Simulation sim(1);
  const GroupId g = sim.create_group(idle(), {}, {kMiner, kClient});
  const AgentId env = sim.membership().environment_of(g);
  const AgentId a = sim.spawn_agent(idle());
  const AgentId b = sim.spawn_agent(idle());
  const AgentId c = sim.spawn_agent(idle());
  const AgentId d = sim.spawn_agent(idle());
  sim.join(a, g, kMiner);
  sim.join(b, g, kMiner);
  sim.join(c, g, kClient);
  EXPECT_EQ(sim.discover(a, g, kMiner), std::vector<AgentId>{b});
  // The environment agent was spawned first, so it sorts first here.
  EXPECT_EQ(sim.discover(a, g), (std::vector<AgentId>{env, b, c}));
  EXPECT_EQ(code_of([&] { sim.discover(d, g); }), OrgErrc::NotMember);
}

TEST(Organization, DespawnRemovesMemberships) {
  Simulation sim(1);
  const GroupId g = sim.create_group(idle(), {}, {kMiner});
  const AgentId a = sim.spawn_agent(idle());
  sim.join(a, g, kMiner);
  sim.despawn(a);
  EXPECT_FALSE(sim.alive(a));
  EXPECT_FALSE(sim.membership().is_member(a, g));
  EXPECT_EQ(code_of([&] { sim.despawn(sim.membership().environment_of(g)); }), OrgErrc::Forbidden);
}

TEST(Organization, HandlersActThroughContext) {
  struct Joiner final : AgentBehavior {
    GroupId group;
    std::vector<AgentId> seen;
    void on_activate(AgentContext& ctx) override {
      ctx.join(group, kMiner);
      ctx.schedule(Payload("look"), 5);
    }
    void on_event(AgentContext& ctx, const Payload&) override { seen = ctx.discover(group, kMiner); }
  };
  Simulation sim(1);
  const GroupId g = sim.create_group(idle(), {}, {kMiner});
  auto j1 = std::make_unique<Joiner>();
  auto j2 = std::make_unique<Joiner>();
  j1->group = j2->group = g;
  Joiner* p1 = j1.get();
  const AgentId a1 = sim.spawn_agent(std::move(j1));
  const AgentId a2 = sim.spawn_agent(std::move(j2));
  sim.kernel().run();
  EXPECT_EQ(p1->seen, std::vector<AgentId>{a2});
  EXPECT_EQ(sim.roles_of(a1, g), std::set<RoleId>{kMiner});
}

// Randomized join/leave/discover walk checked against a plain set-of-triples model.
TEST(OrganizationProperty, RandomWalkKeepsInvariants) {
  std::mt19937_64 gen(77);
  Simulation sim(1);
  const std::vector<RoleId> vocab{kMiner, kClient, RoleId{"Auditor"}};
  std::vector<GroupId> groups;
  for (int i = 0; i < 3; ++i) groups.push_back(sim.create_group(idle(), {}, vocab));
  std::vector<AgentId> agents;
  for (int i = 0; i < 12; ++i) agents.push_back(sim.spawn_agent(idle()));

  std::set<std::tuple<std::uint64_t, std::uint64_t, std::string>> model;
  for (GroupId g : groups) model.insert({sim.membership().environment_of(g).value, g.value, "Environment"});

  const std::vector<RoleId> attempt_roles{kMiner, kClient, RoleId{"Auditor"}, RoleId{"Oracle"}, kEnvironmentRole};
  for (int step = 0; step < 5000; ++step) {
    const GroupId g = groups[gen() % groups.size()];
    const RoleId& r = attempt_roles[gen() % attempt_roles.size()];
    const bool pick_env = gen() % 10 == 0;
    const AgentId a = pick_env ? sim.membership().environment_of(groups[gen() % groups.size()])
                               : agents[gen() % agents.size()];
    const bool declared = r == kEnvironmentRole || std::find(vocab.begin(), vocab.end(), r) != vocab.end();
    const bool is_env_of_g = a == sim.membership().environment_of(g);

    switch (gen() % 3) {
      case 0:
        try {
          sim.join(a, g, r);
          ASSERT_TRUE(declared);
          ASSERT_TRUE(r != kEnvironmentRole || is_env_of_g);
          model.insert({a.value, g.value, r.name});
        } catch (const OrganizationError& e) {
          if (!declared) {
            ASSERT_EQ(e.code(), OrgErrc::RoleUnknown);
          } else {
            ASSERT_EQ(e.code(), OrgErrc::Forbidden);
            ASSERT_TRUE(r == kEnvironmentRole && !is_env_of_g);
          }
        }
        break;
      case 1:
        try {
          sim.leave(a, g, r);
          ASSERT_FALSE(r == kEnvironmentRole && is_env_of_g);
          model.erase({a.value, g.value, r.name});
        } catch (const OrganizationError& e) {
          ASSERT_EQ(e.code(), OrgErrc::Forbidden);
          ASSERT_TRUE(r == kEnvironmentRole && is_env_of_g);
        }
        break;
      default: {
        const std::optional<RoleId> filter = gen() % 2 ? std::optional<RoleId>(r) : std::nullopt;
        const bool member = std::any_of(model.begin(), model.end(), [&](const auto& t) {
          return std::get<0>(t) == a.value && std::get<1>(t) == g.value;
        });
        try {
          const auto found = sim.discover(a, g, filter);
          ASSERT_TRUE(member);
          std::set<std::uint64_t> expect;
          for (const auto& [ag, gr, ro] : model) {
            if (gr == g.value && ag != a.value && (!filter || ro == filter->name)) expect.insert(ag);
          }
          std::vector<std::uint64_t> got;
          for (AgentId x : found) got.push_back(x.value);
          ASSERT_EQ(got, std::vector<std::uint64_t>(expect.begin(), expect.end()));
        } catch (const OrganizationError& e) {
          ASSERT_EQ(e.code(), OrgErrc::NotMember);
          ASSERT_FALSE(member);
        }
      }
    }

    // Relation matches the model; roles are declared; one Environment per group.
    const auto triples = sim.membership().triples();
    ASSERT_EQ(triples.size(), model.size());
    for (const auto& t : triples) {
      ASSERT_TRUE(model.contains({t.agent.value, t.group.value, t.role.name}));
      ASSERT_TRUE(sim.membership().declared_roles(t.group).contains(t.role));
    }
    for (GroupId grp : groups) ASSERT_EQ(sim.membership().members(grp, kEnvironmentRole).size(), 1u);
  }
}

}  // namespace
}  // namespace agrsim
