#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cineplan/geometry.hpp"
#include "cineplan/grid_map.hpp"
#include "cineplan/mission.hpp"

namespace cineplan {

/// Battery is measured in seconds of flight and drains at one second per
/// second, so battery_cost always equals travel_time.
struct PathEstimate {
  std::vector<Vec3> waypoints;  ///< start, intermediate cell centers, goal
  double length = 0.0;          ///< meters
  double travel_time = 0.0;     ///< seconds at cruise speed
  double battery_cost = 0.0;    ///< seconds of flight
};

/// Shortest path between two points. Without a map the path is the straight
/// 3D segment. With a map, the horizontal route follows the A* cell path and
/// the altitude change is folded in as sqrt(horizontal^2 + dz^2).
/// Throws NoPathError when an endpoint is blocked or outside the map, or the
/// goal is enclosed.
PathEstimate plan_path(const Vec3& from, const Vec3& to, const GridMap* map, double speed);

/// Caching front end to `plan_path`. Cell paths are cached per
/// (from-cell, to-cell, map version); polylines are rebuilt from the exact
/// endpoints on every query so results do not depend on cache state.
/// Safe for concurrent use.
class PathPlanner {
 public:
  PathPlanner() = default;
  explicit PathPlanner(std::optional<GridMap> map);

  const GridMap* map() const { return map_ ? &*map_ : nullptr; }

  PathEstimate plan(const Vec3& from, const Vec3& to, double speed) const;
  /// Travel time, or nullopt when no path exists.
  std::optional<double> try_travel_time(const Vec3& from, const Vec3& to, double speed) const;
  double travel_time(const Vec3& from, const Vec3& to, double speed) const;

  std::size_t cache_size() const;

 private:
  struct Key {
    Cell from;
    Cell to;
    std::uint64_t version;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  std::optional<double> horizontal_length(const Vec3& from, const Vec3& to,
                                          std::vector<Vec3>* polyline) const;
  std::shared_ptr<const CellPath> cell_path(Cell from, Cell to) const;

  std::optional<GridMap> map_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Key, std::shared_ptr<const CellPath>, KeyHash> cache_;
};

/// Time for a UAV at `position` at time `clock` to meet `station`: the τ with
/// travel(position, station(clock + τ)) = τ, solved by bisection. For a
/// static station this is the plain travel time. nullopt if unreachable.
std::optional<double> intercept_time(const PathPlanner& planner, const Vec3& position, double clock,
                                     const BaseStation& station, double speed);

/// Lead time σ such that leaving `station` at `arrival_time - σ` reaches
/// `target` exactly at `arrival_time`. nullopt if unreachable.
std::optional<double> departure_lead(const PathPlanner& planner, const BaseStation& station,
                                     const Vec3& target, double arrival_time, double speed);

struct ReturnEstimate {
  double time = 0.0;
  std::size_t station = 0;
  std::string station_id;
};

/// Cheapest return (minimum interception time) over all stations.
/// Throws NoPathError if no station can be reached.
ReturnEstimate return_cost(const PathPlanner& planner, const Vec3& position, double clock,
                           std::span<const BaseStation> stations, double speed);

}  // namespace cineplan
