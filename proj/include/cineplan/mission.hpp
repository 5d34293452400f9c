#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cineplan/geometry.hpp"
#include "cineplan/intervals.hpp"

namespace cineplan {

enum class ShotType { Static, Chase, Flyby, Orbit, Lateral, Establish };

std::string_view to_string(ShotType type);
std::optional<ShotType> parse_shot_type(std::string_view name);

struct Waypoint {
  Vec3 position;
  double time = 0.0;  ///< seconds on the mission clock

  friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// A timed camera trajectory that should be filmed.
struct ShootingTask {
  std::string id;
  ShotType shot_type = ShotType::Static;
  std::vector<Waypoint> waypoints;

  double start_time() const { return waypoints.front().time; }
  double end_time() const { return waypoints.back().time; }
  double duration() const { return end_time() - start_time(); }
  TimeInterval span() const { return {start_time(), end_time()}; }
};

/// Camera position at time `t` by linear interpolation between waypoints.
/// Throws std::out_of_range when `t` lies outside the task interval.
Vec3 task_position_at(const ShootingTask& task, double t);

/// Residual fragments of `task` after removing `covered`. Fragments shorter
/// than `min_duration` are dropped. Fragment boundaries get interpolated
/// waypoints; when the task splits, fragments are named `<id>/<n>`.
std::vector<ShootingTask> subtract_covered(const ShootingTask& task,
                                           std::span<const TimeInterval> covered,
                                           double min_duration = 0.0);

/// Launch and recharge site. A one-entry trajectory is a static station.
struct BaseStation {
  std::string id;
  std::vector<Waypoint> trajectory;
  double recharge_delay = 0.0;

  bool is_static() const;
  /// Position at time `t`, held constant before the first and after the last entry.
  Vec3 position_at(double t) const;
  double max_speed() const;
};

struct UavState {
  std::string uav_id;
  Vec3 position;
  double clock = 0.0;
  double battery_remaining = 0.0;  ///< seconds of flight left

  friend bool operator==(const UavState&, const UavState&) = default;
};

struct UavSpec {
  std::string id;
  double battery_endurance = 0.0;  ///< seconds of flight on a full charge
  double cruise_speed = 0.0;       ///< m/s
  std::optional<UavState> initial_state;
};

/// No-fly map as written in the mission file; rasterized by GridMap.
struct MapSpec {
  Vec2 origin;
  double cell_size = 1.0;
  int width = 0;
  int height = 0;
  std::vector<std::vector<Vec2>> no_fly_zones;
};

struct Mission {
  double epoch = 0.0;
  std::vector<ShootingTask> tasks;
  std::vector<BaseStation> base_stations;
  std::vector<UavSpec> uavs;
  std::optional<MapSpec> map;

  const ShootingTask* find_task(std::string_view id) const;
  const UavSpec* find_uav(std::string_view id) const;
  double total_task_duration() const;
  /// Slowest cruise speed in the fleet.
  double fleet_speed() const;
};

/// Checks every mission invariant; throws ValidationError naming the field.
void validate_mission(const Mission& mission);

/// Initial state of every UAV: the declared one, or parked at the first base
/// station at the epoch with a full battery.
std::vector<UavState> initial_states(const Mission& mission);

}  // namespace cineplan
