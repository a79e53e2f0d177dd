#include <gtest/gtest.h>

#include <random>

#include "agrsim/simulation.hpp"

namespace agrsim {
namespace {

const RoleId kMiner{"Miner"};
const RoleId kClient{"Client"};

struct Received {
  AgentId from;
  std::string tag;
  VirtualTime at;
};

class Recorder final : public AgentBehavior {
 public:
  std::vector<Received> inbox;
  void on_event(AgentContext& ctx, const Payload& p) override {
    if (ctx.envelope() != nullptr) inbox.push_back({ctx.envelope()->sender, std::string(p.tag()), ctx.now()});
  }
};

struct World {
  explicit World(MediationPolicy policy, std::uint64_t seed = 1) : sim(seed) {
    auto env = std::make_unique<Recorder>();
    env_rec = env.get();
    group = sim.create_group(std::move(env), policy, {kMiner, kClient});
    env_id = sim.membership().environment_of(group);
    sim.kernel().add_observer([this](const FiredEvent& e) { trace.push_back(e); });
  }

  AgentId add(const RoleId& role) {
    auto rec = std::make_unique<Recorder>();
    Recorder* raw = rec.get();
    const AgentId id = sim.spawn_agent(std::move(rec));
    recorders[id] = raw;
    sim.join(id, group, role);
    return id;
  }

  std::size_t count_tag(std::string_view tag) const {
    return static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [&](const FiredEvent& e) { return e.tag == tag; }));
  }

  Simulation sim;
  GroupId group;
  AgentId env_id;
  Recorder* env_rec = nullptr;
  std::map<AgentId, Recorder*> recorders;
  std::vector<FiredEvent> trace;
};

MediationPolicy constant(Duration ticks, double drop = 0.0) { return {ConstantLatency{ticks}, drop}; }

TEST(Mediation, NonMemberSendFailsWithoutEvents) {
  World w(constant(5));
  const AgentId outsider = w.sim.spawn_agent(std::make_unique<Recorder>());
  w.sim.kernel().run();
  w.trace.clear();
  try {
    w.sim.send(outsider, w.group, Broadcast{}, Payload("m"));
    FAIL() << "expected NotMember";
  } catch (const OrganizationError& e) {
    EXPECT_EQ(e.code(), OrgErrc::NotMember);
  }
  w.sim.kernel().run();
  EXPECT_TRUE(w.trace.empty());
}

TEST(Mediation, SendToUndeclaredRoleFails) {
  World w(constant(5));
  const AgentId a = w.add(kMiner);
  try {
    w.sim.send(a, w.group, ToRole{RoleId{"Oracle"}}, Payload("m"));
    FAIL() << "expected RoleUnknown";
  } catch (const OrganizationError& e) {
    EXPECT_EQ(e.code(), OrgErrc::RoleUnknown);
  }
}

TEST(Mediation, SendGoesThroughEnvironmentFirst) {
  World w(constant(5));
  const AgentId a = w.add(kMiner);
  const AgentId b = w.add(kMiner);
  w.sim.kernel().run();
  w.trace.clear();
  w.sim.send(a, w.group, ToAgent{b}, Payload("hello"));
  w.sim.kernel().run();
  ASSERT_EQ(w.trace.size(), 2u);
  EXPECT_EQ(w.trace[0].target, w.env_id);
  EXPECT_EQ(w.trace[0].tag, "envelope:hello");
  EXPECT_EQ(w.trace[1].target, b);
  EXPECT_EQ(w.trace[1].tag, "deliver:hello");
  EXPECT_EQ(w.trace[1].fire_time.ticks, 5u);
  ASSERT_EQ(w.recorders[b]->inbox.size(), 1u);
  EXPECT_EQ(w.recorders[b]->inbox[0].from, a);
}

TEST(Mediation, EnvironmentRoleIsConsumedInPlace) {
  World w(constant(5));
  const AgentId a = w.add(kMiner);
  w.add(kMiner);
  w.sim.kernel().run();
  w.sim.send(a, w.group, ToRole{kEnvironmentRole}, Payload("ask"));
  w.sim.kernel().run();
  EXPECT_EQ(w.count_tag("deliver:ask"), 0u);
  ASSERT_EQ(w.env_rec->inbox.size(), 1u);
  EXPECT_EQ(w.env_rec->inbox[0].from, a);
  EXPECT_EQ(w.sim.counters().consumed_by_environment, 1u);
}

TEST(Mediation, DropAllDeliversNothing) {
  World w(constant(5, 1.0));
  const AgentId a = w.add(kMiner);
  for (int i = 0; i < 5; ++i) w.add(kClient);
  w.sim.kernel().run();
  w.sim.send(a, w.group, Broadcast{}, Payload("m"));
  w.sim.kernel().run();
  EXPECT_EQ(w.count_tag("deliver:m"), 0u);
  EXPECT_EQ(w.sim.counters().dropped, 5u);
}

TEST(Mediation, BroadcastExcludesSenderAndEnvironment) {
  World w(constant(5));
  const AgentId s = w.add(kMiner);
  const AgentId x = w.add(kMiner);
  const AgentId y = w.add(kClient);
  w.sim.kernel().run();
  const VirtualTime t0 = w.sim.kernel().now();
  w.sim.send(s, w.group, Broadcast{}, Payload("m"));
  w.sim.kernel().run();
  std::vector<AgentId> got;
  for (const auto& e : w.trace) {
    if (e.tag == "deliver:m") {
      got.push_back(e.target);
      EXPECT_EQ(e.fire_time.ticks, t0.ticks + 5);
    }
  }
  EXPECT_EQ(got, (std::vector<AgentId>{x, y}));
  EXPECT_TRUE(w.env_rec->inbox.empty());
}

TEST(Mediation, ToAgentNonMemberIsUndeliverable) {
  World w(constant(5));
  const AgentId a = w.add(kMiner);
  const AgentId outsider = w.sim.spawn_agent(std::make_unique<Recorder>());
  w.sim.kernel().run();
  w.sim.send(a, w.group, ToAgent{outsider}, Payload("m"));
  w.sim.kernel().run();
  EXPECT_EQ(w.sim.counters().undeliverable, 1u);
  EXPECT_EQ(w.count_tag("deliver:m"), 0u);
}

TEST(Mediation, LeaveBeforeDeliveryIsStale) {
  World w(constant(50));
  const AgentId a = w.add(kMiner);
  const AgentId b = w.add(kMiner);
  w.sim.kernel().run();
  w.sim.send(a, w.group, ToAgent{b}, Payload("m"));
  w.sim.kernel().run_until(VirtualTime{w.sim.kernel().now().ticks + 10});
  w.sim.leave(b, w.group, kMiner);
  w.sim.kernel().run();
  EXPECT_EQ(w.sim.counters().stale_delivery, 1u);
  EXPECT_EQ(w.sim.counters().delivered, 0u);
  EXPECT_TRUE(w.recorders[b]->inbox.empty());
  // The delivery event itself still fires and is traced.
  EXPECT_EQ(w.count_tag("deliver:m"), 1u);
}

TEST(Mediation, DespawnBeforeDeliveryIsStale) {
  World w(constant(50));
  const AgentId a = w.add(kMiner);
  const AgentId b = w.add(kMiner);
  w.sim.kernel().run();
  w.sim.send(a, w.group, ToAgent{b}, Payload("m"));
  w.sim.kernel().run_until(VirtualTime{w.sim.kernel().now().ticks + 10});
  w.sim.despawn(b);
  w.sim.kernel().run();
  EXPECT_EQ(w.sim.counters().stale_delivery, 1u);
  EXPECT_TRUE(w.recorders[b]->inbox.empty());
}

TEST(Mediation, PolicyValidation) {
  EXPECT_THROW((MediationPolicy{UniformLatency{5, 4}, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((MediationPolicy{ExponentialLatency{0.0}, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((MediationPolicy{ConstantLatency{1}, 1.5}.validate()), std::invalid_argument);
  EXPECT_THROW((MediationPolicy{ConstantLatency{1}, -0.1}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((MediationPolicy{ConstantLatency{1}, 1.0}.validate()));
  Simulation sim(1);
  EXPECT_THROW(sim.create_group(std::make_unique<PassiveEnvironment>(), {ConstantLatency{1}, 2.0}, {kMiner}),
               OrganizationError);
}

TEST(SampleLatency, ConstantAndDegenerateUniform) {
  RngStream rng(1, 1);
  EXPECT_EQ(sample_latency(ConstantLatency{7}, rng), 7u);
  EXPECT_EQ(rng.draws(), 0u);
  EXPECT_EQ(sample_latency(UniformLatency{3, 3}, rng), 3u);
}

TEST(SampleLatency, UniformStaysInRange) {
  RngStream rng(2, 1);
  for (int i = 0; i < 10000; ++i) {
    const auto d = sample_latency(UniformLatency{10, 20}, rng);
    ASSERT_GE(d, 10u);
    ASSERT_LE(d, 20u);
  }
}

TEST(SampleLatency, ExponentialMean) {
  RngStream rng(3, 1);
  double sum = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) sum += static_cast<double>(sample_latency(ExponentialLatency{10.0}, rng));
  const double mean = sum / kDraws;
  EXPECT_GE(mean, 9.0);
  EXPECT_LE(mean, 11.0);
}

// mediate() on a bare Membership, no kernel involved.
TEST(Mediate, DropFractionMatchesProbability) {
  Membership m;
  const AgentId env{1};
  const GroupId g = m.add_group(env, {kMiner});
  constexpr std::uint64_t kN = 10000;
  for (std::uint64_t i = 0; i < kN; ++i) m.join(AgentId{2 + i}, g, kMiner);
  const AgentId sender{kN + 2};
  m.join(sender, g, kMiner);
  RngStream rng(99, env.value);
  const Envelope e{sender, g, Broadcast{}, Payload("m"), VirtualTime{0}};
  const auto out = mediate(m, MediationPolicy{ConstantLatency{1}, 0.5}, e, rng);
  EXPECT_EQ(out.dropped + out.deliveries.size(), kN);
  EXPECT_NEAR(static_cast<double>(out.dropped) / kN, 0.5, 0.02);
}

TEST(Mediate, DeliveriesAscendAndLatencyDrawnOnlyWhenKept) {
  Membership m;
  const GroupId g = m.add_group(AgentId{1}, {kMiner});
  for (std::uint64_t a : {9, 4, 6, 2}) m.join(AgentId{a}, g, kMiner);
  const Envelope e{AgentId{2}, g, ToRole{kMiner}, Payload("m"), VirtualTime{0}};

  RngStream rng(5, 1);
  const auto out = mediate(m, MediationPolicy{UniformLatency{1, 100}, 0.4}, e, rng);
  // Replay the documented draw order on an identical stream.
  RngStream replay(5, 1);
  std::vector<PlannedDelivery> expect;
  std::uint64_t dropped = 0;
  for (std::uint64_t r : {4, 6, 9}) {
    if (replay.uniform01() < 0.4) {
      ++dropped;
      continue;
    }
    expect.push_back({AgentId{r}, replay.uniform_int(1, 100)});
  }
  ASSERT_EQ(out.deliveries.size(), expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    EXPECT_EQ(out.deliveries[i].recipient, expect[i].recipient);
    EXPECT_EQ(out.deliveries[i].delay, expect[i].delay);
  }
  EXPECT_EQ(out.dropped, dropped);
  EXPECT_EQ(rng.draws(), replay.draws());
}

// Randomized traffic: every delivery is preceded by its envelope at the
// environment, lands on a member resolved at send time, and never on the sender.
TEST(MediationProperty, RandomTrafficObeysLaws) {
  class Chatter final : public AgentBehavior {
   public:
    explicit Chatter(GroupId g) : group_(g) {}
    void on_activate(AgentContext& ctx) override {
      ctx.join(group_, ctx.rng().uniform01() < 0.5 ? kMiner : kClient);
      ctx.schedule(Payload("tick"), ctx.rng().uniform_int(1, 50));
    }
    void on_event(AgentContext& ctx, const Payload&) override {
      if (ctx.envelope() != nullptr) return;
      const auto peers = ctx.discover(group_);
      switch (ctx.rng().uniform_int(0, 3)) {
        case 0: ctx.send(group_, Broadcast{}, Payload("b")); break;
        case 1: ctx.send(group_, ToRole{kMiner}, Payload("r")); break;
        case 2:
          if (!peers.empty()) ctx.send(group_, ToAgent{peers[ctx.rng().uniform_int(0, peers.size() - 1)]}, Payload("a"));
          break;
        default:
          ctx.send(group_, ToRole{kEnvironmentRole}, Payload("e"));
      }
      if (ctx.now().ticks < 5000) ctx.schedule(Payload("tick"), ctx.rng().uniform_int(1, 50));
    }

   private:
    GroupId group_;
  };

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Simulation sim(seed);
    const GroupId g = sim.create_group(std::make_unique<PassiveEnvironment>(),
                                       {UniformLatency{0, 30}, 0.1 * static_cast<double>(seed % 3)}, {kMiner, kClient});
    for (int i = 0; i < 8; ++i) sim.spawn_agent(std::make_unique<Chatter>(g));

    std::map<EventId, FiredEvent> fired;
    sim.kernel().add_observer([&](const FiredEvent& e) { fired.emplace(e.id, e); });
    std::uint64_t deliveries = 0;
    sim.on_delivery([&](const DeliveryRecord& d) {
      ++deliveries;
      const auto it = fired.find(d.envelope_event);
      ASSERT_NE(it, fired.end());
      EXPECT_EQ(it->second.target, d.environment);
      EXPECT_LE(it->second.fire_time, d.delivered_at);
      EXPECT_EQ(it->second.fire_time, d.send_time);
      EXPECT_NE(d.recipient, d.sender);
      EXPECT_NE(d.recipient, d.environment);
      EXPECT_TRUE(sim.membership().is_member(d.recipient, d.group));
    });
    sim.kernel().run();
    EXPECT_GT(deliveries, 0u);
    EXPECT_EQ(deliveries, sim.counters().delivered);
  }
}

}  // namespace
}  // namespace agrsim
