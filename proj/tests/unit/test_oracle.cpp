#include <gtest/gtest.h>

#include <algorithm>

#include "cineplan/dp_solver.hpp"
#include "cineplan/errors.hpp"
#include "cineplan/oracle.hpp"
#include "cineplan/scenario.hpp"

using namespace cineplan;

namespace {

Mission small_mix(std::uint64_t seed, int uavs) {
  GenParams p;
  p.seed = seed;
  p.uav_count = uavs;
  p.sample_period = 30;
  p.battery = 200;
  return gen_shot_mix(3, 2, p);
}

}  // namespace

TEST(Oracle, NamesTheLimitThatWasHit) {
  GenParams p;
  p.seed = 4;
  const Mission m = gen_longitudinal(12, 3, p);
  const DiscretizationGraph g = build_graph(m, 5.0, m.fleet_speed());
  const auto s = initial_states(m);
  try {
    optimal_single(g, s[0], m.uavs[0]);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), "max_vertices");
  }
  OracleBudget plans{100000, 3, 1e7};
  try {
    optimal_single(g, s[0], m.uavs[0], plans);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), "max_plans");
  }
  Mission three = small_mix(9, 3);
  const DiscretizationGraph g3 = build_graph(three, 30.0, three.fleet_speed());
  const auto s3 = initial_states(three);
  OracleBudget combos{1000, 100000, 2};
  try {
    optimal_multi(g3, s3, three.uavs, combos);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.limit(), "max_combinations");
  }
}

TEST(Oracle, EnumeratedPlansAreDistinctAndBestMatchesSingle) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Mission m = small_mix(seed, 1);
    const DiscretizationGraph g = build_graph(m, 30.0, m.fleet_speed());
    const FilmingView view(g);
    const auto s = initial_states(m);
    const auto plans = enumerate_plans(view, s[0], m.uavs[0]);
    double best = 0.0;
    for (std::size_t i = 0; i < plans.size(); ++i) {
      best = std::max(best, plans[i].filming_time);
      for (std::size_t j = 0; j < i; ++j) EXPECT_NE(plans[i].covered, plans[j].covered);
    }
    EXPECT_EQ(best, optimal_single(g, s[0], m.uavs[0]));
  }
}

TEST(Oracle, MultiWithOneUavEqualsSingle) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const Mission m = small_mix(seed, 1);
    const DiscretizationGraph g = build_graph(m, 30.0, m.fleet_speed());
    const auto s = initial_states(m);
    EXPECT_DOUBLE_EQ(optimal_multi(g, s, m.uavs).filming_time, optimal_single(g, s[0], m.uavs[0]));
  }
}

TEST(Oracle, MultiIsInvariantUnderUavOrder) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Mission m = small_mix(seed, 2);
    m.uavs[1].battery_endurance = 120;
    const DiscretizationGraph g = build_graph(m, 30.0, m.fleet_speed());
    auto s = initial_states(m);
    const double forward = optimal_multi(g, s, m.uavs).filming_time;
    std::reverse(s.begin(), s.end());
    std::reverse(m.uavs.begin(), m.uavs.end());
    const MultiOptimum backward = optimal_multi(g, s, m.uavs);
    EXPECT_DOUBLE_EQ(forward, backward.filming_time);
    ASSERT_EQ(backward.plans.size(), 2u);
    EXPECT_EQ(backward.plans[0].uav_id, s[0].uav_id);
  }
}

TEST(Oracle, MoreUavsNeverHurt) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Mission m = small_mix(seed, 2);
    const DiscretizationGraph g = build_graph(m, 30.0, m.fleet_speed());
    const auto s = initial_states(m);
    const double one = optimal_single(g, s[0], m.uavs[0]);
    const double two = optimal_multi(g, s, m.uavs).filming_time;
    EXPECT_GE(two, one - 1e-9);
    EXPECT_LE(two, m.total_task_duration() + 1e-9);
  }
}
