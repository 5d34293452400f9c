#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "cineplan/errors.hpp"
#include "cineplan/mission_io.hpp"
#include "cineplan/scenario.hpp"

using namespace cineplan;

namespace {

// Peak overlap by sampling midpoints between consecutive boundaries.
int sweep_active(const std::vector<ShootingTask>& tasks) {
  std::vector<double> ts;
  for (const auto& t : tasks) {
    ts.push_back(t.start_time());
    ts.push_back(t.end_time());
  }
  std::sort(ts.begin(), ts.end());
  int peak = 0;
  for (std::size_t i = 1; i < ts.size(); ++i) {
    const double mid = 0.5 * (ts[i - 1] + ts[i]);
    int active = 0;
    for (const auto& t : tasks) active += t.start_time() < mid && mid < t.end_time();
    peak = std::max(peak, active);
  }
  return peak;
}

double max_waypoint_speed(const ShootingTask& t) {
  double v = 0.0;
  for (std::size_t i = 1; i < t.waypoints.size(); ++i) {
    const auto& a = t.waypoints[i - 1];
    const auto& b = t.waypoints[i];
    v = std::max(v, distance(a.position, b.position) / (b.time - a.time));
  }
  return v;
}

TargetTrack steady_track(double speed) {
  TargetTrack track;
  track.speeds.assign(50, speed);
  return track;
}

}  // namespace

TEST(Scenario, GeneratorsAreDeterministic) {
  GenParams p;
  p.seed = 77;
  p.uav_count = 3;
  EXPECT_EQ(save_mission(gen_longitudinal(12, 3, p)), save_mission(gen_longitudinal(12, 3, p)));
  EXPECT_EQ(save_mission(gen_shot_mix(6, 2, p)), save_mission(gen_shot_mix(6, 2, p)));
  GenParams q = p;
  q.seed = 78;
  EXPECT_NE(save_mission(gen_longitudinal(12, 3, p)), save_mission(gen_longitudinal(12, 3, q)));
}

TEST(Scenario, LongitudinalRespectsActiveBoundAndDurations) {
  for (int x : {1, 2, 4}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      GenParams p;
      p.seed = seed;
      const Mission m = gen_longitudinal(20, x, p);
      ASSERT_EQ(m.tasks.size(), 20u);
      EXPECT_LE(sweep_active(m.tasks), x) << "seed " << seed;
      EXPECT_EQ(max_active_tasks(m.tasks), sweep_active(m.tasks));
      for (const auto& t : m.tasks) {
        EXPECT_GE(t.duration(), 30.0 - 1e-9);
        EXPECT_LE(t.duration(), 70.0 + 1e-9);
        EXPECT_LE(max_waypoint_speed(t), p.uav_speed + 1e-9);
        EXPECT_LE(path_length(t), p.shot_length_max + 1e-6);
      }
      EXPECT_NO_THROW(validate_mission(m));
    }
  }
}

TEST(Scenario, ShotMixRespectsBounds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenParams p;
    p.seed = seed;
    p.uav_count = 2;
    const Mission m = gen_shot_mix(6, 2, p);
    EXPECT_LE(sweep_active(m.tasks), 2);
    EXPECT_EQ(m.uavs.size(), 2u);
    for (const auto& t : m.tasks) {
      EXPECT_LE(max_waypoint_speed(t), p.uav_speed + 1e-9);
      EXPECT_GE(t.duration(), 30.0 - 1e-9);
      EXPECT_LE(t.duration(), 70.0 + 1e-9);
    }
    EXPECT_NO_THROW(validate_mission(m));
  }
}

TEST(Scenario, ForcedTypesComeFirst) {
  GenParams p;
  p.seed = 5;
  const std::vector<ShotType> forced{ShotType::Orbit, ShotType::Orbit, ShotType::Static};
  const Mission m = gen_shot_mix(5, 3, p, forced);
  ASSERT_EQ(m.tasks.size(), 5u);
  std::map<ShotType, int> first;
  for (std::size_t i = 0; i < 3; ++i) ++first[m.tasks[i].shot_type];
  EXPECT_EQ(first[ShotType::Orbit], 2);
  EXPECT_EQ(first[ShotType::Static], 1);
}

TEST(Scenario, StaticShotHoldsPosition) {
  const TargetTrack track = steady_track(1.5);
  const ShootingTask t = make_static(track, 10, 40, 5, 3);
  for (const auto& w : t.waypoints) EXPECT_EQ(w.position, t.waypoints.front().position);
  EXPECT_DOUBLE_EQ(t.waypoints.front().position.z, 5.0);
  EXPECT_DOUBLE_EQ(t.waypoints.front().position.y, 10.0);
  EXPECT_DOUBLE_EQ(t.waypoints.front().position.x, 1.5 * 30.0);
}

TEST(Scenario, ChaseTrailsTheTarget) {
  const TargetTrack track = steady_track(1.5);
  const ShootingTask t = make_chase(track, 10, 40, 5, 3);
  EXPECT_EQ(t.waypoints.size(), 9u);
  for (const auto& w : t.waypoints) {
    EXPECT_NEAR(w.position.x, 1.5 * w.time - 8.0, 1e-9);
    EXPECT_NEAR(w.position.z, 3.0, 1e-12);
  }
}

TEST(Scenario, FlybyOvertakes) {
  const TargetTrack track = steady_track(1.0);
  const ShootingTask t = make_flyby(track, 0, 40, 5, 3);
  EXPECT_NEAR(t.waypoints.front().position.x, -10.0, 1e-9);
  EXPECT_NEAR(t.waypoints.back().position.x, 40.0 + 10.0, 1e-9);
  // Target 1 m/s plus 20 m gained over 40 s.
  EXPECT_NEAR(max_waypoint_speed(t), 1.5, 1e-9);
}

TEST(Scenario, OrbitKeepsItsRadius) {
  const TargetTrack track = steady_track(1.0);
  const ShootingTask t = make_orbit(track, 0, 40, 2, 3);
  const Vec3 center = track.position_at(20);
  for (const auto& w : t.waypoints) {
    EXPECT_NEAR(std::hypot(w.position.x - center.x, w.position.y - center.y), 10.0, 1e-9);
    EXPECT_DOUBLE_EQ(w.position.z, 5.0);
  }
  EXPECT_NEAR(t.waypoints.front().position.y, 10.0, 1e-9);
  EXPECT_NEAR(t.waypoints.back().position.y, -10.0, 1e-9);
}

TEST(Scenario, EstablishClosesIn) {
  const TargetTrack track = steady_track(1.0);
  const ShootingTask t = make_establish(track, 0, 30, 5, 3);
  const auto gap = [&](const Waypoint& w) { return distance(w.position, track.position_at(w.time)); };
  EXPECT_NEAR(gap(t.waypoints.front()), std::hypot(15.0, 10.0), 1e-9);
  EXPECT_NEAR(gap(t.waypoints.back()), std::hypot(5.0, 3.0), 1e-9);
  for (std::size_t i = 1; i < t.waypoints.size(); ++i)
    EXPECT_LT(gap(t.waypoints[i]), gap(t.waypoints[i - 1]));
}

TEST(Scenario, TooFastShotIsRejected) {
  const TargetTrack track = steady_track(2.0);
  EXPECT_THROW(make_chase(track, 0, 30, 5, 1.0), GenerationError);
}

TEST(Scenario, ParameterValidation) {
  GenParams p;
  p.uav_speed = 1.5;
  EXPECT_THROW(gen_longitudinal(4, 2, p), GenerationError);
  p = {};
  p.shot_duration_min = 80;
  EXPECT_THROW(gen_shot_mix(4, 2, p), GenerationError);
  p = {};
  p.uav_count = 0;
  EXPECT_THROW(p.validate(), GenerationError);
  EXPECT_THROW(gen_longitudinal(0, 1, GenParams{}), GenerationError);
  EXPECT_THROW(gen_shot_mix(3, 0, GenParams{}), GenerationError);
}

TEST(Scenario, RngIsPortable) {
  Rng a(1);
  Rng b(1);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
  Rng c(3);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(c.index(7), 7u);
}
