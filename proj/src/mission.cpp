#include "cineplan/mission.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "cineplan/errors.hpp"

namespace cineplan {

namespace {

constexpr std::array<std::pair<ShotType, std::string_view>, 6> kShotNames{{
    {ShotType::Static, "Static"},
    {ShotType::Chase, "Chase"},
    {ShotType::Flyby, "Flyby"},
    {ShotType::Orbit, "Orbit"},
    {ShotType::Lateral, "Lateral"},
    {ShotType::Establish, "Establish"},
}};

Vec3 interpolate(std::span<const Waypoint> wps, double t) {
  if (t <= wps.front().time) return wps.front().position;
  if (t >= wps.back().time) return wps.back().position;
  auto it = std::upper_bound(wps.begin(), wps.end(), t,
                             [](double v, const Waypoint& w) { return v < w.time; });
  const Waypoint& b = *it;
  const Waypoint& a = *(it - 1);
  const double span = b.time - a.time;
  if (span <= 0.0) return b.position;
  return lerp(a.position, b.position, (t - a.time) / span);
}

std::string indexed(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void check_waypoints(std::span<const Waypoint> wps, const std::string& path, bool strictly) {
  for (std::size_t i = 0; i < wps.size(); ++i) {
    const auto& w = wps[i];
    if (!std::isfinite(w.time) || w.time < 0.0)
      throw ValidationError(indexed(path, i) + ".t", "time must be finite and non-negative");
    if (!w.position.finite())
      throw ValidationError(indexed(path, i), "position must be finite");
    if (strictly && i > 0 && !(w.time > wps[i - 1].time))
      throw ValidationError(indexed(path, i) + ".t", "non-increasing waypoint times");
  }
}

}  // namespace

std::string_view to_string(ShotType type) {
  for (const auto& [t, name] : kShotNames)
    if (t == type) return name;
  return "Static";
}

std::optional<ShotType> parse_shot_type(std::string_view name) {
  for (const auto& [t, n] : kShotNames)
    if (n == name) return t;
  return std::nullopt;
}

Vec3 task_position_at(const ShootingTask& task, double t) {
  if (task.waypoints.empty()) throw std::out_of_range("task has no waypoints");
  if (t < task.start_time() - kTimeEps || t > task.end_time() + kTimeEps)
    throw std::out_of_range("time " + std::to_string(t) + " outside task " + task.id + " interval [" +
                            std::to_string(task.start_time()) + ", " +
                            std::to_string(task.end_time()) + "]");
  return interpolate(task.waypoints, t);
}

std::vector<ShootingTask> subtract_covered(const ShootingTask& task,
                                           std::span<const TimeInterval> covered,
                                           double min_duration) {
  std::vector<TimeInterval> pieces = subtract_intervals(task.span(), covered);
  std::erase_if(pieces, [&](const TimeInterval& p) {
    return p.length() < std::max(min_duration, kTimeEps);
  });

  std::vector<ShootingTask> fragments;
  fragments.reserve(pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& piece = pieces[k];
    ShootingTask frag;
    frag.id = pieces.size() == 1 ? task.id : task.id + "/" + std::to_string(k + 1);
    frag.shot_type = task.shot_type;
    frag.waypoints.push_back({interpolate(task.waypoints, piece.start), piece.start});
    for (const auto& w : task.waypoints)
      if (w.time > piece.start + kTimeEps && w.time < piece.end - kTimeEps) frag.waypoints.push_back(w);
    frag.waypoints.push_back({interpolate(task.waypoints, piece.end), piece.end});
    fragments.push_back(std::move(frag));
  }
  return fragments;
}

bool BaseStation::is_static() const {
  if (trajectory.size() <= 1) return true;
  return std::all_of(trajectory.begin(), trajectory.end(),
                     [&](const Waypoint& w) { return w.position == trajectory.front().position; });
}

Vec3 BaseStation::position_at(double t) const { return interpolate(trajectory, t); }

double BaseStation::max_speed() const {
  double best = 0.0;
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double dt = trajectory[i].time - trajectory[i - 1].time;
    if (dt > 0.0)
      best = std::max(best, distance(trajectory[i].position, trajectory[i - 1].position) / dt);
  }
  return best;
}

const ShootingTask* Mission::find_task(std::string_view id) const {
  for (const auto& t : tasks)
    if (t.id == id) return &t;
  return nullptr;
}

const UavSpec* Mission::find_uav(std::string_view id) const {
  for (const auto& u : uavs)
    if (u.id == id) return &u;
  return nullptr;
}

double Mission::total_task_duration() const {
  double total = 0.0;
  for (const auto& t : tasks) total += t.duration();
  return total;
}

double Mission::fleet_speed() const {
  double speed = std::numeric_limits<double>::infinity();
  for (const auto& u : uavs) speed = std::min(speed, u.cruise_speed);
  return std::isfinite(speed) ? speed : 0.0;
}

void validate_mission(const Mission& mission) {
  if (!std::isfinite(mission.epoch) || mission.epoch < 0.0)
    throw ValidationError("epoch", "epoch must be finite and non-negative");

  std::set<std::string> ids;
  for (std::size_t i = 0; i < mission.tasks.size(); ++i) {
    const auto& task = mission.tasks[i];
    const std::string path = indexed("tasks", i);
    if (task.id.empty()) throw ValidationError(path + ".id", "empty id");
    if (!ids.insert(task.id).second) throw ValidationError(path + ".id", "duplicate task id '" + task.id + "'");
    if (task.waypoints.size() < 2)
      throw ValidationError(path + ".waypoints", "a task needs at least two waypoints");
    check_waypoints(task.waypoints, path + ".waypoints", true);
  }

  if (mission.base_stations.empty())
    throw ValidationError("base_stations", "at least one base station is required");
  if (mission.uavs.empty()) throw ValidationError("uavs", "at least one UAV is required");

  ids.clear();
  for (std::size_t i = 0; i < mission.uavs.size(); ++i) {
    const auto& uav = mission.uavs[i];
    const std::string path = indexed("uavs", i);
    if (uav.id.empty()) throw ValidationError(path + ".id", "empty id");
    if (!ids.insert(uav.id).second) throw ValidationError(path + ".id", "duplicate UAV id '" + uav.id + "'");
    if (!(uav.battery_endurance > 0.0) || !std::isfinite(uav.battery_endurance))
      throw ValidationError(path + ".battery_endurance", "must be positive");
    if (!(uav.cruise_speed > 0.0) || !std::isfinite(uav.cruise_speed))
      throw ValidationError(path + ".cruise_speed", "must be positive");
    if (uav.initial_state) {
      const auto& s = *uav.initial_state;
      if (!s.position.finite() || !std::isfinite(s.clock) || s.clock < mission.epoch)
        throw ValidationError(path + ".initial_state", "position and time must be finite, time >= epoch");
      if (s.battery_remaining < 0.0 || s.battery_remaining > uav.battery_endurance)
        throw ValidationError(path + ".initial_state.battery", "battery must lie in [0, battery_endurance]");
    }
  }

  ids.clear();
  for (std::size_t i = 0; i < mission.base_stations.size(); ++i) {
    const auto& bs = mission.base_stations[i];
    const std::string path = indexed("base_stations", i);
    if (bs.id.empty()) throw ValidationError(path + ".id", "empty id");
    if (!ids.insert(bs.id).second) throw ValidationError(path + ".id", "duplicate base station id '" + bs.id + "'");
    if (bs.trajectory.empty()) throw ValidationError(path + ".trajectory", "empty trajectory");
    check_waypoints(bs.trajectory, path + ".trajectory", true);
    if (!(bs.recharge_delay >= 0.0) || !std::isfinite(bs.recharge_delay))
      throw ValidationError(path + ".recharge_delay", "must be non-negative");
    const double speed = bs.max_speed();
    for (const auto& uav : mission.uavs)
      if (!(speed < uav.cruise_speed))
        throw ValidationError(path + ".trajectory",
                              "station speed must stay below every UAV cruise speed (UAV '" + uav.id + "')");
  }

  if (mission.map) {
    const auto& map = *mission.map;
    if (!(map.cell_size > 0.0)) throw ValidationError("map.cell_size", "must be positive");
    if (map.width <= 0 || map.height <= 0) throw ValidationError("map", "width and height must be positive");
    const double max_x = map.origin.x + map.width * map.cell_size;
    const double max_y = map.origin.y + map.height * map.cell_size;
    auto inside = [&](const Vec3& p) {
      return p.x >= map.origin.x && p.x < max_x && p.y >= map.origin.y && p.y < max_y;
    };
    for (std::size_t i = 0; i < mission.tasks.size(); ++i)
      for (std::size_t j = 0; j < mission.tasks[i].waypoints.size(); ++j)
        if (!inside(mission.tasks[i].waypoints[j].position))
          throw ValidationError(indexed(indexed("tasks", i) + ".waypoints", j), "waypoint outside map bounds");
    for (std::size_t i = 0; i < mission.base_stations.size(); ++i)
      for (std::size_t j = 0; j < mission.base_stations[i].trajectory.size(); ++j)
        if (!inside(mission.base_stations[i].trajectory[j].position))
          throw ValidationError(indexed(indexed("base_stations", i) + ".trajectory", j),
                                "station position outside map bounds");
  }
}

std::vector<UavState> initial_states(const Mission& mission) {
  std::vector<UavState> states;
  states.reserve(mission.uavs.size());
  for (const auto& uav : mission.uavs) {
    if (uav.initial_state) {
      UavState s = *uav.initial_state;
      s.uav_id = uav.id;
      states.push_back(std::move(s));
    } else {
      const Vec3 home = mission.base_stations.front().position_at(mission.epoch);
      states.push_back({uav.id, home, mission.epoch, uav.battery_endurance});
    }
  }
  return states;
}

}  // namespace cineplan
