#include "cineplan/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "cineplan/errors.hpp"

namespace cineplan {

namespace {

constexpr double kFrontSpeed = 1.5;  // m/s, the race front in longitudinal scenarios
constexpr double kFirstStart = 30.0;  // s, earliest task start so departures stay after the epoch

std::vector<double> sample_times(double t0, double duration, double period) {
  std::vector<double> times;
  for (int k = 0;; ++k) {
    const double t = t0 + k * period;
    if (t >= t0 + duration - 1e-9) break;
    times.push_back(t);
  }
  times.push_back(t0 + duration);
  return times;
}

template <class PositionFn>
ShootingTask sample_shot(std::string_view name, ShotType type, double t0, double duration, double period,
                         double uav_speed, PositionFn&& position) {
  if (!(duration > 0.0)) throw GenerationError(std::string(name) + ": duration must be positive");
  if (!(period > 0.0)) throw GenerationError(std::string(name) + ": sample period must be positive");
  ShootingTask task;
  task.shot_type = type;
  for (double t : sample_times(t0, duration, period)) task.waypoints.push_back(Waypoint{position(t), t});
  for (std::size_t i = 1; i < task.waypoints.size(); ++i) {
    const auto& a = task.waypoints[i - 1];
    const auto& b = task.waypoints[i];
    const double speed = distance(a.position, b.position) / (b.time - a.time);
    if (speed > uav_speed + 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: segment %zu [%.3f, %.3f] needs %.3f m/s, above UAV speed %.3f",
                    std::string(name).c_str(), i - 1, a.time, b.time, speed, uav_speed);
      throw GenerationError(buf);
    }
  }
  return task;
}

Vec3 up(double z) { return {0.0, 0.0, z}; }

std::vector<UavSpec> fleet(const GenParams& p) {
  std::vector<UavSpec> uavs;
  for (int i = 0; i < p.uav_count; ++i) uavs.push_back({"uav" + std::to_string(i + 1), p.battery, p.uav_speed, {}});
  return uavs;
}

std::string task_id(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "t%02d", i + 1);
  return buf;
}

bool fits(std::vector<ShootingTask>& tasks, ShootingTask candidate, int limit) {
  tasks.push_back(std::move(candidate));
  const bool ok = max_active_tasks(tasks) <= limit;
  tasks.pop_back();
  return ok;
}

// Rejection sampling of the start time, then the smallest later start that fits.
template <class BuildFn>
ShootingTask place(Rng& rng, std::vector<ShootingTask>& tasks, int limit, double window, BuildFn&& build) {
  double first_try = kFirstStart;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const double t0 = rng.uniform(kFirstStart, kFirstStart + window);
    if (attempt == 0) first_try = t0;
    ShootingTask task = build(t0);
    if (fits(tasks, task, limit)) return task;
  }
  std::vector<double> ends;
  for (const auto& t : tasks)
    if (t.end_time() >= first_try) ends.push_back(t.end_time());
  std::sort(ends.begin(), ends.end());
  for (double t0 : ends) {
    ShootingTask task = build(t0);
    if (fits(tasks, task, limit)) return task;
  }
  throw GenerationError("could not place a task within the active-task limit");
}

double horizon_for(int n, int x, const GenParams& p) {
  const double mean = 0.5 * (p.shot_duration_min + p.shot_duration_max);
  return std::max(p.shot_duration_max, n * mean / (0.75 * x));
}

}  // namespace

void GenParams::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw GenerationError(std::string("invalid generator parameter: ") + what);
  };
  need(target_speed_min > 0.0 && target_speed_min <= target_speed_max, "target_speed range");
  need(uav_speed > target_speed_max, "uav_speed must exceed the target speed");
  need(battery > 0.0, "battery");
  need(shot_length_max > 0.0, "shot_length_max");
  need(shot_duration_min > 0.0 && shot_duration_min <= shot_duration_max, "shot_duration range");
  need(route_length >= 0.0, "route_length");
  need(sample_period > 0.0, "sample_period");
  need(recharge_delay >= 0.0, "recharge_delay");
  need(uav_count >= 1, "uav_count");
}

Vec3 TargetTrack::position_at(double t) const {
  double s = 0.0;
  const double dt = t - t0;
  if (speeds.empty()) return origin;
  if (dt <= 0.0) {
    s = speeds.front() * dt;
  } else {
    double left = dt;
    for (std::size_t i = 0; i < speeds.size() && left > 0.0; ++i) {
      const double step = (i + 1 == speeds.size()) ? left : std::min(left, piece);
      s += speeds[i] * step;
      left -= step;
    }
  }
  return origin + forward() * s;
}

double TargetTrack::speed_at(double t) const {
  if (speeds.empty()) return 0.0;
  if (t <= t0) return speeds.front();
  const auto i = static_cast<std::size_t>((t - t0) / piece);
  return speeds[std::min(i, speeds.size() - 1)];
}

TargetTrack make_track(Rng& rng, const GenParams& params, Vec3 origin, Vec2 heading, double t0, double horizon) {
  TargetTrack track;
  track.origin = origin;
  const double norm = std::hypot(heading.x, heading.y);
  track.heading = norm > 0.0 ? Vec2{heading.x / norm, heading.y / norm} : Vec2{1.0, 0.0};
  track.t0 = t0;
  const auto pieces = static_cast<std::size_t>(std::ceil(std::max(horizon, 0.0) / track.piece)) + 1;
  for (std::size_t i = 0; i < pieces; ++i)
    track.speeds.push_back(rng.uniform(params.target_speed_min, params.target_speed_max));
  return track;
}

ShootingTask make_static(const TargetTrack& track, double t0, double duration, double sample_period,
                         double uav_speed, const StaticGeometry& g) {
  const Vec3 spot = track.position_at(t0 + 0.5 * duration) + track.left() * g.lateral + up(g.height);
  return sample_shot("static", ShotType::Static, t0, duration, sample_period, uav_speed, [&](double) { return spot; });
}

ShootingTask make_chase(const TargetTrack& track, double t0, double duration, double sample_period, double uav_speed,
                        const ChaseGeometry& g) {
  return sample_shot("chase", ShotType::Chase, t0, duration, sample_period, uav_speed, [&](double t) {
    return track.position_at(t) - track.forward() * g.behind + up(g.height);
  });
}

ShootingTask make_flyby(const TargetTrack& track, double t0, double duration, double sample_period, double uav_speed,
                        const FlybyGeometry& g) {
  return sample_shot("flyby", ShotType::Flyby, t0, duration, sample_period, uav_speed, [&](double t) {
    const double s = (t - t0) / duration;
    const double along = -g.start_behind + (g.start_behind + g.end_ahead) * s;
    return track.position_at(t) + track.forward() * along + track.left() * g.lateral + up(g.height);
  });
}

ShootingTask make_orbit(const TargetTrack& track, double t0, double duration, double sample_period, double uav_speed,
                        const OrbitGeometry& g) {
  const Vec3 center = track.position_at(t0 + 0.5 * duration);
  return sample_shot("orbit", ShotType::Orbit, t0, duration, sample_period, uav_speed, [&](double t) {
    // From the target's left, through the point ahead of it, to its right.
    const double theta = std::numbers::pi / 2.0 - std::numbers::pi * (t - t0) / duration;
    return center + track.forward() * (g.radius * std::cos(theta)) + track.left() * (g.radius * std::sin(theta)) +
           up(g.height);
  });
}

ShootingTask make_lateral(const TargetTrack& track, double t0, double duration, double sample_period,
                          double uav_speed, const LateralGeometry& g) {
  return sample_shot("lateral", ShotType::Lateral, t0, duration, sample_period, uav_speed, [&](double t) {
    return track.position_at(t) + track.left() * g.offset + up(g.height);
  });
}

ShootingTask make_establish(const TargetTrack& track, double t0, double duration, double sample_period,
                            double uav_speed, const EstablishGeometry& g) {
  return sample_shot("establish", ShotType::Establish, t0, duration, sample_period, uav_speed, [&](double t) {
    const double s = (t - t0) / duration;
    const double behind = g.start_behind + (g.end_behind - g.start_behind) * s;
    const double height = g.start_height + (g.end_height - g.start_height) * s;
    return track.position_at(t) - track.forward() * behind + up(height);
  });
}

double path_length(const ShootingTask& task) {
  double len = 0.0;
  for (std::size_t i = 1; i < task.waypoints.size(); ++i)
    len += distance(task.waypoints[i - 1].position, task.waypoints[i].position);
  return len;
}

int max_active_tasks(std::span<const ShootingTask> tasks) {
  std::vector<std::pair<double, int>> events;
  for (const auto& t : tasks) {
    events.emplace_back(t.start_time(), +1);
    events.emplace_back(t.end_time(), -1);
  }
  // Ends sort before starts at equal times, so abutting tasks do not overlap.
  std::sort(events.begin(), events.end());
  int active = 0, peak = 0;
  for (const auto& [t, d] : events) {
    active += d;
    peak = std::max(peak, active);
  }
  return peak;
}

Mission gen_longitudinal(int n, int x, const GenParams& params) {
  params.validate();
  if (n < 1 || x < 1) throw GenerationError("n and x must be at least 1");
  Rng rng(params.seed);
  const double horizon = horizon_for(n, x, params);
  const double front = params.route_length > 0.0 ? params.route_length / (kFirstStart + horizon) : kFrontSpeed;

  Mission m;
  m.base_stations.push_back({"bs1", {{{0.0, 0.0, 0.0}, 0.0}}, params.recharge_delay});
  m.uavs = fleet(params);
  for (int i = 0; i < n; ++i) {
    const double duration = rng.uniform(params.shot_duration_min, params.shot_duration_max);
    const double speed = rng.uniform(params.target_speed_min, params.target_speed_max);
    const double length = std::min(speed * duration, params.shot_length_max);
    const double jitter = rng.uniform(-20.0, 20.0);
    const double lateral = rng.uniform(-15.0, 15.0);
    const double height = rng.uniform(3.0, 10.0);
    ShootingTask task = place(rng, m.tasks, x, std::max(0.0, horizon - duration), [&](double t0) {
      const Vec3 a{front * t0 + jitter, lateral, height};
      const Vec3 b = a + Vec3{length, 0.0, 0.0};
      return sample_shot("chase", ShotType::Chase, t0, duration, params.sample_period, params.uav_speed,
                         [&](double t) { return lerp(a, b, (t - t0) / duration); });
    });
    task.id = task_id(i);
    m.tasks.push_back(std::move(task));
  }
  return m;
}

Mission gen_shot_mix(int n, int max_active, const GenParams& params, const std::vector<ShotType>& forced) {
  params.validate();
  if (n < 1 || max_active < 1) throw GenerationError("n and max_active must be at least 1");
  Rng rng(params.seed);
  const double horizon = horizon_for(n, max_active, params);
  const TargetTrack track =
      make_track(rng, params, {0.0, 0.0, 0.0}, {1.0, 0.0}, 0.0, kFirstStart + horizon + params.shot_duration_max);
  static constexpr std::array kTypes{ShotType::Static, ShotType::Chase, ShotType::Flyby, ShotType::Orbit};

  Mission m;
  m.base_stations.push_back({"bs1", {{{0.0, 0.0, 0.0}, 0.0}}, params.recharge_delay});
  m.uavs = fleet(params);
  for (int i = 0; i < n; ++i) {
    const ShotType type =
        static_cast<std::size_t>(i) < forced.size() ? forced[static_cast<std::size_t>(i)] : kTypes[rng.index(kTypes.size())];
    const double drawn = rng.uniform(params.shot_duration_min, params.shot_duration_max);
    const double side = rng.uniform() < 0.5 ? -1.0 : 1.0;
    auto build = [&](double t0, double duration) {
      switch (type) {
        case ShotType::Static:
          return make_static(track, t0, duration, params.sample_period, params.uav_speed, {10.0 * side, 5.0});
        case ShotType::Chase:
          return make_chase(track, t0, duration, params.sample_period, params.uav_speed);
        case ShotType::Flyby:
          return make_flyby(track, t0, duration, params.sample_period, params.uav_speed, {10.0, 10.0, 5.0, 3.0 * side});
        case ShotType::Orbit:
          return make_orbit(track, t0, duration, params.sample_period, params.uav_speed);
        case ShotType::Lateral:
          return make_lateral(track, t0, duration, params.sample_period, params.uav_speed, {10.0 * side, 5.0});
        case ShotType::Establish:
          return make_establish(track, t0, duration, params.sample_period, params.uav_speed);
      }
      throw GenerationError("unknown shot type");
    };
    ShootingTask task = place(rng, m.tasks, max_active, std::max(0.0, horizon - drawn), [&](double t0) {
      double duration = drawn;
      ShootingTask shot = build(t0, duration);
      // Shorten long shots to the length cap, never below the minimum duration.
      for (int k = 0; k < 20 && path_length(shot) > params.shot_length_max + 1e-9 &&
                      duration > params.shot_duration_min;
           ++k) {
        duration = std::max(params.shot_duration_min, duration * params.shot_length_max / path_length(shot));
        shot = build(t0, duration);
      }
      return shot;
    });
    task.id = task_id(i);
    m.tasks.push_back(std::move(task));
  }
  return m;
}

}  // namespace cineplan
