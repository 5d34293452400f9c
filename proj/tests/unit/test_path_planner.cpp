#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <queue>

#include "cineplan/errors.hpp"
#include "cineplan/grid_map.hpp"
#include "cineplan/path_planner.hpp"
#include "cineplan/scenario.hpp"

using namespace cineplan;

namespace {

// Plain Dijkstra over the same 8-connected move set, written without a heuristic.
double dijkstra(const GridMap& map, Cell from, Cell to) {
  const int w = map.width();
  const int h = map.height();
  std::vector<double> dist(static_cast<std::size_t>(w * h), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  auto id = [&](Cell c) { return c.y * w + c.x; };
  auto free = [&](Cell c) { return map.in_bounds(c) && !map.blocked(c); };
  if (!free(from) || !free(to)) return dist[0] = std::numeric_limits<double>::infinity();
  dist[static_cast<std::size_t>(id(from))] = 0.0;
  pq.push({0.0, id(from)});
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(i)]) continue;
    const Cell c{i % w, i / w};
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        if (!dx && !dy) continue;
        const Cell n{c.x + dx, c.y + dy};
        if (!free(n)) continue;
        if (dx && dy && (!free({c.x + dx, c.y}) || !free({c.x, c.y + dy}))) continue;
        const double nd = d + map.cell_size() * ((dx && dy) ? std::sqrt(2.0) : 1.0);
        if (nd < dist[static_cast<std::size_t>(id(n))]) {
          dist[static_cast<std::size_t>(id(n))] = nd;
          pq.push({nd, id(n)});
        }
      }
  }
  return dist[static_cast<std::size_t>(id(to))];
}

GridMap random_map(Rng& rng, int w, int h, double density) {
  GridMap map({0.0, 0.0}, 2.0, w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (rng.uniform() < density) map.block({x, y});
  return map;
}

}  // namespace

TEST(GridMap, AStarMatchesDijkstraOnRandomMaps) {
  Rng rng(11);
  int reachable = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const GridMap map = random_map(rng, 12 + static_cast<int>(rng.index(10)), 8 + static_cast<int>(rng.index(10)),
                                   rng.uniform(0.0, 0.35));
    const Cell a{static_cast<int>(rng.index(static_cast<std::size_t>(map.width()))),
                 static_cast<int>(rng.index(static_cast<std::size_t>(map.height())))};
    const Cell b{static_cast<int>(rng.index(static_cast<std::size_t>(map.width()))),
                 static_cast<int>(rng.index(static_cast<std::size_t>(map.height())))};
    const double expected = dijkstra(map, a, b);
    const auto path = map.shortest_path(a, b);
    if (!std::isfinite(expected)) {
      EXPECT_FALSE(path.has_value()) << "trial " << trial;
      continue;
    }
    ++reachable;
    ASSERT_TRUE(path.has_value()) << "trial " << trial;
    EXPECT_NEAR(path->cost, expected, 1e-9) << "trial " << trial;
    ASSERT_EQ(path->cells.front(), a);
    ASSERT_EQ(path->cells.back(), b);
    double walked = 0.0;
    for (std::size_t i = 1; i < path->cells.size(); ++i) {
      const Cell p = path->cells[i - 1];
      const Cell c = path->cells[i];
      const int dx = c.x - p.x;
      const int dy = c.y - p.y;
      ASSERT_LE(std::abs(dx), 1);
      ASSERT_LE(std::abs(dy), 1);
      EXPECT_FALSE(map.blocked(c));
      if (dx && dy) {
        EXPECT_FALSE(map.blocked({p.x + dx, p.y}));
        EXPECT_FALSE(map.blocked({p.x, p.y + dy}));
      }
      walked += map.cell_size() * ((dx && dy) ? std::sqrt(2.0) : 1.0);
    }
    EXPECT_NEAR(walked, path->cost, 1e-9);
  }
  EXPECT_GT(reachable, 100);
}

TEST(GridMap, PolygonRasterizationIsConservative) {
  GridMap map({0.0, 0.0}, 1.0, 10, 10);
  const std::vector<Vec2> square{{2.5, 2.5}, {4.5, 2.5}, {4.5, 4.5}, {2.5, 4.5}};
  map.block_polygon(square);
  // Any cell overlapping [2.5, 4.5]^2 is blocked: cells 2..4 in both axes.
  EXPECT_EQ(map.blocked_count(), 9u);
  EXPECT_TRUE(map.blocked({2, 2}));
  EXPECT_TRUE(map.blocked({4, 4}));
  EXPECT_FALSE(map.blocked({5, 3}));
}

TEST(PathPlanner, StraightLineWithoutMap) {
  const PathEstimate e = plan_path({0, 0, 0}, {3, 4, 12}, nullptr, 2.0);
  EXPECT_DOUBLE_EQ(e.length, 13.0);
  EXPECT_DOUBLE_EQ(e.travel_time, 6.5);
  EXPECT_DOUBLE_EQ(e.battery_cost, e.travel_time);
  EXPECT_EQ(e.waypoints.size(), 2u);
}

TEST(PathPlanner, DetourAroundWallFoldsAltitude) {
  GridMap map({0.0, 0.0}, 1.0, 20, 20);
  for (int y = 0; y < 15; ++y) map.block({10, y});
  const Vec3 from{2.5, 2.5, 0.0};
  const Vec3 to{17.5, 2.5, 10.0};
  const PathEstimate e = plan_path(from, to, &map, 5.0);
  double horizontal = 0.0;
  for (std::size_t i = 1; i < e.waypoints.size(); ++i) {
    const Vec3& a = e.waypoints[i - 1];
    const Vec3& b = e.waypoints[i];
    horizontal += std::hypot(b.x - a.x, b.y - a.y);
    const auto cell = map.cell_at({b.x, b.y});
    ASSERT_TRUE(cell.has_value());
    EXPECT_FALSE(map.blocked(*cell));
  }
  EXPECT_GT(horizontal, 2 * std::hypot(7.5, 12.5));  // via the wall's top corner at (10, 15)
  EXPECT_NEAR(e.length, std::hypot(horizontal, 10.0), 1e-9);
  EXPECT_NEAR(e.travel_time, e.length / 5.0, 1e-12);
}

TEST(PathPlanner, BlockedOrEnclosedEndpointsThrow) {
  GridMap map({0.0, 0.0}, 1.0, 10, 10);
  map.block({5, 5});
  EXPECT_THROW(plan_path({5.5, 5.5, 0}, {1, 1, 0}, &map, 1.0), NoPathError);
  EXPECT_THROW(plan_path({-3, 1, 0}, {1, 1, 0}, &map, 1.0), NoPathError);
  for (int y = 0; y < 3; ++y)
    for (int x = 0; x < 3; ++x)
      if (x != 1 || y != 1) map.block({x, y});
  EXPECT_THROW(plan_path({1.5, 1.5, 0}, {8, 8, 0}, &map, 1.0), NoPathError);
}

TEST(PathPlanner, CacheDoesNotChangeAnswers) {
  Rng rng(5);
  GridMap map = random_map(rng, 30, 30, 0.15);
  map.block({0, 0});
  PathPlanner planner(map);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a{rng.uniform(0, 60), rng.uniform(0, 60), rng.uniform(0, 10)};
    const Vec3 b{rng.uniform(0, 60), rng.uniform(0, 60), rng.uniform(0, 10)};
    std::optional<PathEstimate> direct;
    try {
      direct = plan_path(a, b, &map, 3.0);
    } catch (const NoPathError&) {
    }
    for (int repeat = 0; repeat < 2; ++repeat) {
      const auto t = planner.try_travel_time(a, b, 3.0);
      ASSERT_EQ(t.has_value(), direct.has_value());
      if (t) EXPECT_DOUBLE_EQ(*t, direct->travel_time);
    }
  }
  EXPECT_GT(planner.cache_size(), 0u);
}

TEST(PathPlanner, InterceptMovingStation) {
  PathPlanner planner;
  const BaseStation still{"s", {{{0, 0, 0}, 0}}, 0};
  EXPECT_NEAR(*intercept_time(planner, {30, 40, 0}, 0, still, 5.0), 10.0, 1e-9);

  // Station drives toward +x at 1 m/s; UAV at (100, 0) flies at 3 m/s. Meeting: 3τ = 100 - (10 + τ).
  const BaseStation car{"car", {{{0, 0, 0}, 0}, {{1000, 0, 0}, 1000}}, 0};
  const double tau = *intercept_time(planner, {100, 0, 0}, 10.0, car, 3.0);
  EXPECT_NEAR(tau, 22.5, 1e-6);

  // Departure lead: leave the car so as to be at (50, 30) at t = 40.
  const double lead = *departure_lead(planner, car, {50, 30, 0}, 40.0, 3.0);
  const Vec3 from = car.position_at(40.0 - lead);
  EXPECT_NEAR(std::hypot(50 - from.x, 30 - from.y) / 3.0, lead, 1e-6);

  const std::vector<BaseStation> both{still, car};
  const ReturnEstimate r = return_cost(planner, {100, 0, 0}, 10.0, both, 3.0);
  EXPECT_EQ(r.station_id, "car");
  EXPECT_NEAR(r.time, 22.5, 1e-6);
}
