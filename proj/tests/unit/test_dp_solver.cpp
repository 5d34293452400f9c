#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "battery_replay.hpp"
#include "cineplan/dp_solver.hpp"
#include "cineplan/errors.hpp"
#include "cineplan/mission_io.hpp"
#include "cineplan/oracle.hpp"
#include "instances.hpp"

using namespace cineplan;
using namespace cineplan::testing;

namespace {

// Two static shots 3 m above the station, [20, 60] and [70, 110].
Mission two_shots(double battery, double delay) {
  Mission m;
  m.tasks.push_back({"a", ShotType::Static, {{{0, 0, 3}, 20}, {{0, 0, 3}, 60}}});
  m.tasks.push_back({"b", ShotType::Static, {{{0, 0, 3}, 70}, {{0, 0, 3}, 110}}});
  m.base_stations.push_back({"bs", {{{0, 0, 0}, 0}}, delay});
  m.uavs.push_back({"u", battery, 3, std::nullopt});
  return m;
}

SingleUavPlan solve(const Mission& m, double alpha, const UavState& start) {
  const DiscretizationGraph g = build_graph(m, alpha, m.fleet_speed());
  return solve_single(g, start, m.uavs[0]);
}

}  // namespace

TEST(Dominance, AllThreeCriteria) {
  const Label a{10, 5, 0};
  EXPECT_TRUE(dominates(a, {10, 5, 0}));
  EXPECT_TRUE(dominates(a, {9, 5, 3}));
  EXPECT_FALSE(dominates(a, {9, 6, 3}));
  EXPECT_FALSE(dominates(a, {9, 4, -1}));
  LabelSet set;
  EXPECT_TRUE(set.insert({5, 5, 0}));
  EXPECT_FALSE(set.insert({5, 5, 0}));
  EXPECT_TRUE(set.insert({6, 1, 0}));
  EXPECT_TRUE(set.insert({6, 6, 0}));  // evicts both
  EXPECT_EQ(set.size(), 1u);
}

TEST(DpSolver, ChaseMatchesSingleSortieEnumeration) {
  // One 48 s chase at 1.5 m/s from (0,0,3); station at the origin; alpha 5.
  Mission m = load_mission_file(std::string(CINEPLAN_FIXTURES) + "/field2.json");
  m.uavs.resize(1);
  std::vector<double> ts;
  for (double t = 10; t < 58; t += 5) ts.push_back(t);
  ts.push_back(58);
  auto ret = [](double t) { return std::hypot(1.5 * (t - 10), 3.0) / 3.0; };
  for (double b : {20.0, 30.0, 40.0, 55.0, 70.0, 90.0}) {
    m.uavs[0].battery_endurance = b;
    double best = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        const double lead = ret(ts[i]);
        if (ts[i] - lead < 0.0) continue;
        bool ok = true;
        for (std::size_t k = i; k <= j; ++k) ok &= b - lead - (ts[k] - ts[i]) + 1e-6 >= ret(ts[k]);
        if (ok) best = std::max(best, ts[j] - ts[i]);
      }
    const SingleUavPlan plan = solve(m, 5.0, initial_states(m)[0]);
    EXPECT_NEAR(plan.filming_time, best, 1e-9) << "battery " << b;
    EXPECT_TRUE(replay_plan(m, plan, 5.0, 3.0).empty()) << "battery " << b;
  }
}

TEST(DpSolver, RechargeDelayCostsFilmingTime) {
  Mission m = two_shots(50, 0);
  SingleUavPlan plan = solve(m, 5.0, initial_states(m)[0]);
  EXPECT_NEAR(plan.filming_time, 80.0, 1e-9);
  int recharges = 0;
  for (const auto& s : plan.segments) recharges += s.kind == SegmentKind::Recharge;
  EXPECT_EQ(recharges, 1);

  // Back at ~61 s, ready at ~91 s: the second shot can only be joined at its 95 s vertex.
  m = two_shots(50, 30);
  plan = solve(m, 5.0, initial_states(m)[0]);
  EXPECT_NEAR(plan.filming_time, 55.0, 1e-9);
  for (const auto& v : replay_plan(m, plan, 5.0, 3.0)) ADD_FAILURE() << v;
}

TEST(DpSolver, DockedPartialBatteryWaitsForRecharge) {
  Mission m = two_shots(50, 20);
  m.tasks.resize(1);
  UavState s = initial_states(m)[0];
  s.battery_remaining = 10;
  // Ready at 20, the first reachable vertex is 25.
  EXPECT_NEAR(solve(m, 5.0, s).filming_time, 35.0, 1e-9);
  m.base_stations[0].recharge_delay = 0;
  EXPECT_NEAR(solve(m, 5.0, s).filming_time, 40.0, 1e-9);
}

TEST(DpSolver, AirborneStartDrainsFromTheClock) {
  Mission m = two_shots(50, 0);
  m.tasks.resize(1);
  UavState s{"u", {0, 0, 3}, 20, 45};
  SingleUavPlan plan = solve(m, 5.0, s);
  EXPECT_NEAR(plan.filming_time, 40.0, 1e-9);
  ASSERT_FALSE(plan.segments.empty());
  EXPECT_EQ(plan.segments.front().kind, SegmentKind::Film);
  // 30 s left: film until 45 s, keep 1 s to get home. A slow recharge rules out a second sortie.
  m.base_stations[0].recharge_delay = 100;
  s.battery_remaining = 30;
  plan = solve(m, 5.0, s);
  EXPECT_NEAR(plan.filming_time, 25.0, 1e-9);
  EXPECT_TRUE(replay_plan(m, plan, 5.0, 3.0).empty());

  // Instant recharge: home at 46 s, back on the task at its 50 s vertex.
  m.base_stations[0].recharge_delay = 0;
  plan = solve(m, 5.0, s);
  EXPECT_NEAR(plan.filming_time, 35.0, 1e-9);
  EXPECT_TRUE(replay_plan(m, plan, 5.0, 3.0).empty());
}

TEST(DpSolver, EmptyPlans) {
  Mission m = two_shots(50, 0);
  m.tasks = {{"far", ShotType::Static, {{{500, 0, 3}, 20}, {{500, 0, 3}, 60}}}};
  const SingleUavPlan docked = solve(m, 5.0, initial_states(m)[0]);
  EXPECT_TRUE(docked.empty());
  EXPECT_TRUE(docked.segments.empty());
  EXPECT_DOUBLE_EQ(docked.filming_time, 0.0);

  const UavState airborne{"u", {30, 40, 0}, 5, 40};
  const SingleUavPlan home = solve(m, 5.0, airborne);
  ASSERT_EQ(home.segments.size(), 1u);
  EXPECT_EQ(home.segments[0].kind, SegmentKind::Navigate);
  EXPECT_NEAR(home.segments[0].t_end(), 5 + 50.0 / 3.0, 1e-6);
}

TEST(DpSolver, SegmentsAlternateAndCoverMatchesFilm) {
  const Mission m = load_mission_file(std::string(CINEPLAN_FIXTURES) + "/field1.json");
  const DiscretizationGraph g = build_graph(m, 5.0, 3.0);
  const SingleUavPlan plan = solve_single(g, initial_states(m)[0], m.uavs[0]);
  double film = 0.0;
  for (const auto& s : plan.segments)
    if (s.kind == SegmentKind::Film) film += s.t_end() - s.t_start();
  double covered = 0.0;
  for (const auto& c : plan.covered) covered += c.span.length();
  EXPECT_NEAR(film, plan.filming_time, 1e-9);
  EXPECT_NEAR(covered, plan.filming_time, 1e-9);
  EXPECT_NEAR(plan.filming_time, 70.0, 1e-9);  // one whole two-shot sequence
}

TEST(DpSolver, AgreesWithExhaustiveSearchOnSmallInstances) {
  Rng rng(99);
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 150 && seed < 3000; ++seed) {
    auto inst = random_single_instance(rng, seed, 30);
    if (!inst) continue;
    const DiscretizationGraph g = build_graph(inst->mission, inst->alpha, inst->mission.fleet_speed());
    const SingleUavPlan plan = solve_single(g, inst->start, inst->mission.uavs[0]);
    double best;
    try {
      best = optimal_single(g, inst->start, inst->mission.uavs[0]);
    } catch (const BudgetExceeded&) {
      continue;
    }
    ++checked;
    EXPECT_EQ(plan.filming_time, best) << "seed " << seed;
    const double home = straight_return_time(inst->mission, inst->start.position, inst->start.clock,
                                             inst->mission.fleet_speed());
    if (inst->start.battery_remaining < home) continue;  // stranded from the start
    for (const auto& v : replay_plan(inst->mission, plan, inst->alpha, inst->mission.fleet_speed()))
      ADD_FAILURE() << "seed " << seed << ": " << v;
  }
  EXPECT_EQ(checked, 150);
}

TEST(BatteryReplay, RejectsTamperedPlans) {
  Mission m = two_shots(50, 30);
  const SingleUavPlan plan = solve(m, 5.0, initial_states(m)[0]);
  ASSERT_TRUE(replay_plan(m, plan, 5.0, 3.0).empty());

  Mission weaker = m;  // same plan, smaller battery
  weaker.uavs[0].battery_endurance = 30;
  EXPECT_FALSE(replay_plan(weaker, plan, 5.0, 3.0).empty());

  Mission slower = m;  // longer recharge than the plan waited
  slower.base_stations[0].recharge_delay = 60;
  EXPECT_FALSE(replay_plan(slower, plan, 5.0, 3.0).empty());

  SingleUavPlan stranded = plan;  // drop the flight home
  stranded.segments.pop_back();
  EXPECT_FALSE(replay_plan(m, stranded, 5.0, 3.0).empty());

  SingleUavPlan teleport = plan;  // shift a film segment off the trajectory
  for (auto& s : teleport.segments)
    if (s.kind == SegmentKind::Film) {
      s.to.position.x += 50;
      break;
    }
  EXPECT_FALSE(replay_plan(m, teleport, 5.0, 3.0).empty());
}
