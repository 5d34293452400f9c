#include "cineplan/path_planner.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <mutex>

#include "cineplan/errors.hpp"

namespace cineplan {

namespace {

void resolve_cells(const GridMap& map, const Vec3& from, const Vec3& to, Cell& a, Cell& b) {
  auto ca = map.cell_at(from.xy());
  auto cb = map.cell_at(to.xy());
  if (!ca || !cb) throw NoPathError("path endpoint outside the map");
  if (map.blocked(*ca) || map.blocked(*cb)) throw NoPathError("path endpoint inside a no-fly cell");
  a = *ca;
  b = *cb;
}

double polyline_length(const Vec3& from, const Vec3& to, const GridMap& map, const CellPath& path,
                       std::vector<Vec3>* polyline) {
  // Exact endpoints replace the centers of the first and last cells.
  std::vector<Vec2> pts;
  pts.push_back(from.xy());
  for (std::size_t i = 1; i + 1 < path.cells.size(); ++i) pts.push_back(map.center(path.cells[i]));
  pts.push_back(to.xy());
  double h = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) h += distance(pts[i - 1], pts[i]);
  if (polyline) {
    polyline->clear();
    const double total = h > 0.0 ? h : 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) acc += distance(pts[i - 1], pts[i]);
      const double z = i + 1 == pts.size() ? to.z : from.z + (to.z - from.z) * (acc / total);
      polyline->push_back({pts[i].x, pts[i].y, z});
    }
  }
  return h;
}

template <class TravelFn>
std::optional<double> solve_meeting(TravelFn&& gap) {
  // gap(τ) = travel(τ) - τ, non-increasing when the station is slower than the UAV.
  auto f = [&](double tau) -> double {
    const std::optional<double> g = gap(tau);
    return g ? *g : std::numeric_limits<double>::infinity();
  };
  const double f0 = f(0.0);
  if (f0 <= 0.0) return 0.0;
  double hi = std::isfinite(f0) ? std::max(f0, 1e-3) : 1.0;
  int doublings = 0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 64) return std::nullopt;
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace

PathEstimate plan_path(const Vec3& from, const Vec3& to, const GridMap* map, double speed) {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  PathEstimate est;
  double horizontal = 0.0;
  if (map == nullptr) {
    est.waypoints = {from, to};
    horizontal = distance(from.xy(), to.xy());
  } else {
    Cell a, b;
    resolve_cells(*map, from, to, a, b);
    if (a == b) {
      est.waypoints = {from, to};
      horizontal = distance(from.xy(), to.xy());
    } else {
      auto cells = map->shortest_path(a, b);
      if (!cells) throw NoPathError("no path between the endpoints: goal enclosed by no-fly cells");
      horizontal = polyline_length(from, to, *map, *cells, &est.waypoints);
    }
  }
  est.length = std::hypot(horizontal, to.z - from.z);
  est.travel_time = est.length / speed;
  est.battery_cost = est.travel_time;
  return est;
}

PathPlanner::PathPlanner(std::optional<GridMap> map) : map_(std::move(map)) {}

std::size_t PathPlanner::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(k.version);
  auto mix = [&](int v) { h ^= std::hash<int>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  mix(k.from.x);
  mix(k.from.y);
  mix(k.to.x);
  mix(k.to.y);
  return h;
}

std::shared_ptr<const CellPath> PathPlanner::cell_path(Cell from, Cell to) const {
  const Key key{from, to, map_->version()};
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  auto found = map_->shortest_path(from, to);
  std::shared_ptr<const CellPath> entry = found ? std::make_shared<const CellPath>(std::move(*found)) : nullptr;
  std::unique_lock lock(mutex_);
  return cache_.emplace(key, std::move(entry)).first->second;
}

std::optional<double> PathPlanner::horizontal_length(const Vec3& from, const Vec3& to,
                                                     std::vector<Vec3>* polyline) const {
  if (!map_) {
    if (polyline) *polyline = {from, to};
    return distance(from.xy(), to.xy());
  }
  auto ca = map_->cell_at(from.xy());
  auto cb = map_->cell_at(to.xy());
  if (!ca || !cb || map_->blocked(*ca) || map_->blocked(*cb)) return std::nullopt;
  if (*ca == *cb) {
    if (polyline) *polyline = {from, to};
    return distance(from.xy(), to.xy());
  }
  auto cells = cell_path(*ca, *cb);
  if (!cells) return std::nullopt;
  return polyline_length(from, to, *map_, *cells, polyline);
}

PathEstimate PathPlanner::plan(const Vec3& from, const Vec3& to, double speed) const {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be positive");
  if (map_) {
    Cell a, b;
    resolve_cells(*map_, from, to, a, b);
  }
  PathEstimate est;
  auto h = horizontal_length(from, to, &est.waypoints);
  if (!h) throw NoPathError("no path between the endpoints: goal enclosed by no-fly cells");
  est.length = std::hypot(*h, to.z - from.z);
  est.travel_time = est.length / speed;
  est.battery_cost = est.travel_time;
  return est;
}

std::optional<double> PathPlanner::try_travel_time(const Vec3& from, const Vec3& to, double speed) const {
  auto h = horizontal_length(from, to, nullptr);
  if (!h) return std::nullopt;
  return std::hypot(*h, to.z - from.z) / speed;
}

double PathPlanner::travel_time(const Vec3& from, const Vec3& to, double speed) const {
  return plan(from, to, speed).travel_time;
}

std::size_t PathPlanner::cache_size() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

std::optional<double> intercept_time(const PathPlanner& planner, const Vec3& position, double clock,
                                     const BaseStation& station, double speed) {
  if (station.is_static()) return planner.try_travel_time(position, station.trajectory.front().position, speed);
  return solve_meeting([&](double tau) -> std::optional<double> {
    auto t = planner.try_travel_time(position, station.position_at(clock + tau), speed);
    if (!t) return std::nullopt;
    return *t - tau;
  });
}

std::optional<double> departure_lead(const PathPlanner& planner, const BaseStation& station,
                                     const Vec3& target, double arrival_time, double speed) {
  if (station.is_static()) return planner.try_travel_time(station.trajectory.front().position, target, speed);
  return solve_meeting([&](double sigma) -> std::optional<double> {
    auto t = planner.try_travel_time(station.position_at(arrival_time - sigma), target, speed);
    if (!t) return std::nullopt;
    return *t - sigma;
  });
}

ReturnEstimate return_cost(const PathPlanner& planner, const Vec3& position, double clock,
                           std::span<const BaseStation> stations, double speed) {
  std::optional<ReturnEstimate> best;
  for (std::size_t i = 0; i < stations.size(); ++i) {
    auto tau = intercept_time(planner, position, clock, stations[i], speed);
    if (tau && (!best || *tau < best->time)) best = ReturnEstimate{*tau, i, stations[i].id};
  }
  if (!best) throw NoPathError("no base station reachable");
  return *best;
}

}  // namespace cineplan
