#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cineplan/intervals.hpp"
#include "cineplan/mission.hpp"
#include "cineplan/path_planner.hpp"

namespace cineplan {

enum class VertexKind : std::uint8_t { Base = 0, Task = 1 };
enum class StationRole : std::uint8_t { Departure = 0, Dwell = 1, Arrival = 2 };

struct Vertex {
  int id = -1;
  VertexKind kind = VertexKind::Task;
  int task = -1;     ///< task index, task vertices only
  int station = -1;  ///< station index, base vertices only
  StationRole role = StationRole::Dwell;
  int index = 0;  ///< position along the augmented task or the station chain
  Waypoint waypoint;

  double time() const { return waypoint.time; }
  bool is_base() const { return kind == VertexKind::Base; }
};

enum class EdgeKind : std::uint8_t {
  Film,      ///< consecutive waypoints of one task
  Cross,     ///< task vertex to the first reachable vertex of another task
  Depart,    ///< station to task vertex, arriving exactly on time
  Arrive,    ///< task vertex back to a station
  Dwell,     ///< consecutive vertices of one station; no battery drain
  Transfer,  ///< station to the first reachable vertex of another station
};

std::string_view to_string(EdgeKind kind);

struct Edge {
  int from = -1;
  int to = -1;
  EdgeKind kind = EdgeKind::Film;
  double travel_time = 0.0;    ///< t_to - t_from
  double filming_value = 0.0;  ///< equals travel_time on film edges, 0 otherwise
  double battery_cost = 0.0;   ///< equals travel_time except on dwell edges
};

struct GraphOptions {
  double alpha = 5.0;      ///< seconds per discretization piece
  double uav_speed = 3.0;  ///< m/s used for every reachability and return estimate
  /// Departure vertices earlier than this are dropped. Defaults to the mission epoch.
  std::optional<double> horizon_start;
  /// Keep only the quickest station's departure for each task vertex.
  bool prune_dominated_departures = false;
};

struct GraphWarning {
  std::string task_id;
  std::string message;
};

/// Time-expanded DAG over augmented task waypoints and base-station contacts.
/// Immutable once built.
class DiscretizationGraph {
 public:
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const int> out_edges(int v) const { return out_[static_cast<std::size_t>(v)]; }

  /// Vertices in a time-sorted topological order.
  const std::vector<int>& order() const { return order_; }

  std::span<const int> task_vertices(int task) const { return task_vertices_[static_cast<std::size_t>(task)]; }
  /// Film edges of one task in time order.
  std::span<const int> film_edges(int task) const { return film_edges_[static_cast<std::size_t>(task)]; }
  /// Vertices of one station sorted along its dwell chain.
  std::span<const int> station_vertices(int station) const {
    return station_vertices_[static_cast<std::size_t>(station)];
  }

  /// Minimum time to intercept a station from the vertex; 0 at base vertices,
  /// +inf when no station is reachable.
  double return_time(int v) const { return return_time_[static_cast<std::size_t>(v)]; }

  int task_index(std::string_view id) const;
  const std::vector<ShootingTask>& tasks() const { return tasks_; }
  const std::vector<BaseStation>& stations() const { return stations_; }
  const PathPlanner& planner() const { return *planner_; }
  std::shared_ptr<const PathPlanner> shared_planner() const { return planner_; }

  double alpha() const { return alpha_; }
  double uav_speed() const { return uav_speed_; }
  double horizon_start() const { return horizon_start_; }
  const std::vector<GraphWarning>& warnings() const { return warnings_; }

 private:
  friend DiscretizationGraph build_graph(const Mission&, const GraphOptions&,
                                         std::shared_ptr<const PathPlanner>);

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<int> order_;
  std::vector<std::vector<int>> task_vertices_;
  std::vector<std::vector<int>> film_edges_;
  std::vector<std::vector<int>> station_vertices_;
  std::vector<double> return_time_;
  std::vector<ShootingTask> tasks_;
  std::vector<BaseStation> stations_;
  std::shared_ptr<const PathPlanner> planner_;
  double alpha_ = 0.0;
  double uav_speed_ = 0.0;
  double horizon_start_ = 0.0;
  std::vector<GraphWarning> warnings_;
};

/// Waypoints of `task` with extra points every `alpha` seconds inside each
/// original segment; the last piece of a segment may be shorter.
/// Throws std::invalid_argument for non-positive alpha.
std::vector<Waypoint> augment_task(const ShootingTask& task, double alpha);

/// Builds the graph. When `planner` is null one is created from the mission map.
DiscretizationGraph build_graph(const Mission& mission, const GraphOptions& options,
                                std::shared_ptr<const PathPlanner> planner = nullptr);
DiscretizationGraph build_graph(const Mission& mission, double alpha, double uav_speed);

/// Kahn's algorithm, choosing among ready vertices by (time, kind, id).
/// Throws std::logic_error on a cycle.
std::vector<int> topological_order(std::span<const Vertex> vertices, std::span<const Edge> edges);
inline std::vector<int> topological_order(const DiscretizationGraph& graph) {
  return topological_order(graph.vertices(), graph.edges());
}

/// Filming values of a graph with some task time already covered. Film edges
/// lose the covered part of their interval; nothing else changes.
class FilmingView {
 public:
  explicit FilmingView(const DiscretizationGraph& graph);

  const DiscretizationGraph& graph() const { return *graph_; }
  double value(int edge) const { return values_[static_cast<std::size_t>(edge)]; }
  std::span<const TimeInterval> zeroed(int task) const { return zeroed_[static_cast<std::size_t>(task)]; }
  /// Uncovered parts of a film edge's interval (empty for other edges).
  std::vector<TimeInterval> uncovered_parts(int edge) const;

  friend FilmingView zero_filming(const FilmingView& view, std::span<const CoveredInterval> covered);

 private:
  const DiscretizationGraph* graph_;
  std::vector<std::vector<TimeInterval>> zeroed_;
  std::vector<double> values_;
};

/// Returns a new view with `covered` removed from the filming values.
/// Intervals of unknown tasks are ignored.
FilmingView zero_filming(const FilmingView& view, std::span<const CoveredInterval> covered);
inline FilmingView zero_filming(const DiscretizationGraph& graph, std::span<const CoveredInterval> covered) {
  return zero_filming(FilmingView(graph), covered);
}

/// Plain-text adjacency listing for fixtures and diffing.
std::string dump_graph(const DiscretizationGraph& graph);

}  // namespace cineplan
