#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cineplan/mission.hpp"

namespace cineplan {

struct GenParams {
  double target_speed_min = 1.0;  ///< m/s
  double target_speed_max = 2.0;
  double uav_speed = 3.0;
  double battery = 900.0;  ///< seconds
  double shot_length_max = 80.0;  ///< meters
  double shot_duration_min = 30.0;
  double shot_duration_max = 70.0;
  double route_length = 0.0;  ///< meters; 0 sizes the route from n and x
  double sample_period = 5.0;  ///< seconds between generated waypoints
  double recharge_delay = 0.0;
  int uav_count = 1;
  std::uint64_t seed = 1;

  /// Throws GenerationError naming the offending parameter.
  void validate() const;
};

/// mt19937_64 with a fixed double conversion, so sequences do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Integer in [0, n).
  std::size_t index(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * static_cast<double>(n))); }

 private:
  std::mt19937_64 engine_;
};

/// Target on a straight line with piecewise-constant speed.
struct TargetTrack {
  Vec3 origin;            ///< position at `t0`
  Vec2 heading{1.0, 0.0};  ///< unit vector
  double t0 = 0.0;
  double piece = 10.0;  ///< seconds per speed sample
  std::vector<double> speeds;

  Vec3 position_at(double t) const;
  double speed_at(double t) const;
  Vec3 forward() const { return {heading.x, heading.y, 0.0}; }
  Vec3 left() const { return {-heading.y, heading.x, 0.0}; }
};

TargetTrack make_track(Rng& rng, const GenParams& params, Vec3 origin, Vec2 heading, double t0, double horizon);

struct StaticGeometry {
  double lateral = 10.0;
  double height = 5.0;
};
struct ChaseGeometry {
  double behind = 8.0;
  double height = 3.0;
};
struct FlybyGeometry {
  double start_behind = 10.0;
  double end_ahead = 10.0;
  double height = 5.0;
  double lateral = 3.0;
};
struct OrbitGeometry {
  double radius = 10.0;
  double height = 5.0;
};
struct LateralGeometry {
  double offset = 10.0;
  double height = 5.0;
};
struct EstablishGeometry {
  double start_behind = 15.0;
  double start_height = 10.0;
  double end_behind = 5.0;
  double end_height = 3.0;
};

/// Shot constructors. Waypoints are sampled every `sample_period` seconds
/// plus the end time. Throw GenerationError when a segment would need more
/// than `uav_speed`.
ShootingTask make_static(const TargetTrack& track, double t0, double duration, double sample_period,
                         double uav_speed, const StaticGeometry& g = {});
ShootingTask make_chase(const TargetTrack& track, double t0, double duration, double sample_period, double uav_speed,
                        const ChaseGeometry& g = {});
ShootingTask make_flyby(const TargetTrack& track, double t0, double duration, double sample_period, double uav_speed,
                        const FlybyGeometry& g = {});
ShootingTask make_orbit(const TargetTrack& track, double t0, double duration, double sample_period, double uav_speed,
                        const OrbitGeometry& g = {});
ShootingTask make_lateral(const TargetTrack& track, double t0, double duration, double sample_period,
                          double uav_speed, const LateralGeometry& g = {});
ShootingTask make_establish(const TargetTrack& track, double t0, double duration, double sample_period,
                            double uav_speed, const EstablishGeometry& g = {});

/// Length of the waypoint polyline in meters.
double path_length(const ShootingTask& task);
/// Largest number of tasks whose open intervals contain a common instant.
int max_active_tasks(std::span<const ShootingTask> tasks);

/// Chase-style tasks scattered along a straight route with at most `x`
/// simultaneously active.
Mission gen_longitudinal(int n, int x, const GenParams& params);

/// Static, Chase, Flyby and Orbit shots of one target. When `forced` is
/// given its types are used in order before random draws.
Mission gen_shot_mix(int n, int max_active, const GenParams& params,
                     const std::vector<ShotType>& forced = {});

}  // namespace cineplan
