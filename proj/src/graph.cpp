#include "cineplan/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cineplan {

std::string_view to_string(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Film: return "film";
    case EdgeKind::Cross: return "cross";
    case EdgeKind::Depart: return "depart";
    case EdgeKind::Arrive: return "arrive";
    case EdgeKind::Dwell: return "dwell";
    case EdgeKind::Transfer: return "transfer";
  }
  return "?";
}

std::vector<Waypoint> augment_task(const ShootingTask& task, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
  std::vector<Waypoint> out;
  if (task.waypoints.empty()) return out;
  out.push_back(task.waypoints.front());
  for (std::size_t s = 1; s < task.waypoints.size(); ++s) {
    const Waypoint& a = task.waypoints[s - 1];
    const Waypoint& b = task.waypoints[s];
    const double span = b.time - a.time;
    for (int k = 1;; ++k) {
      const double t = a.time + k * alpha;
      if (t >= b.time - kTimeEps) break;
      out.push_back({lerp(a.position, b.position, (t - a.time) / span), t});
    }
    out.push_back(b);
  }
  return out;
}

std::vector<int> topological_order(std::span<const Vertex> vertices, std::span<const Edge> edges) {
  const std::size_t n = vertices.size();
  std::vector<int> indegree(n, 0);
  std::vector<std::vector<int>> out(n);
  for (const auto& e : edges) {
    ++indegree[static_cast<std::size_t>(e.to)];
    out[static_cast<std::size_t>(e.from)].push_back(e.to);
  }
  auto later = [&](int a, int b) {
    const Vertex& va = vertices[static_cast<std::size_t>(a)];
    const Vertex& vb = vertices[static_cast<std::size_t>(b)];
    return std::tuple(va.time(), static_cast<int>(va.kind), a) > std::tuple(vb.time(), static_cast<int>(vb.kind), b);
  };
  std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
  for (std::size_t v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push(static_cast<int>(v));
  std::vector<int> order;
  order.reserve(n);
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : out[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  if (order.size() != n) throw std::logic_error("discretization graph contains a cycle");
  return order;
}

int DiscretizationGraph::task_index(std::string_view id) const {
  for (std::size_t i = 0; i < tasks_.size(); ++i)
    if (tasks_[i].id == id) return static_cast<int>(i);
  return -1;
}

DiscretizationGraph build_graph(const Mission& mission, double alpha, double uav_speed) {
  GraphOptions options;
  options.alpha = alpha;
  options.uav_speed = uav_speed;
  return build_graph(mission, options);
}

DiscretizationGraph build_graph(const Mission& mission, const GraphOptions& options,
                                std::shared_ptr<const PathPlanner> planner) {
  if (!(options.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(options.uav_speed > 0.0)) throw std::invalid_argument("uav speed must be positive");

  DiscretizationGraph g;
  g.tasks_ = mission.tasks;
  g.stations_ = mission.base_stations;
  g.alpha_ = options.alpha;
  g.uav_speed_ = options.uav_speed;
  g.horizon_start_ = options.horizon_start.value_or(mission.epoch);
  if (!planner) {
    std::optional<GridMap> grid;
    if (mission.map) grid = GridMap::from_spec(*mission.map);
    planner = std::make_shared<const PathPlanner>(std::move(grid));
  }
  g.planner_ = planner;
  const double speed = options.uav_speed;
  const std::size_t n_tasks = g.tasks_.size();
  const std::size_t n_stations = g.stations_.size();

  auto add_vertex = [&](Vertex v) {
    v.id = static_cast<int>(g.vertices_.size());
    g.vertices_.push_back(v);
    g.return_time_.push_back(v.kind == VertexKind::Base ? 0.0 : std::numeric_limits<double>::infinity());
    return v.id;
  };
  auto add_edge = [&](int from, int to, EdgeKind kind) {
    const double dt = std::max(0.0, g.vertices_[static_cast<std::size_t>(to)].time() -
                                        g.vertices_[static_cast<std::size_t>(from)].time());
    Edge e{from, to, kind, dt, kind == EdgeKind::Film ? dt : 0.0, kind == EdgeKind::Dwell ? 0.0 : dt};
    g.edges_.push_back(e);
    return static_cast<int>(g.edges_.size() - 1);
  };

  // Task vertices and film edges.
  g.task_vertices_.resize(n_tasks);
  g.film_edges_.resize(n_tasks);
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const auto augmented = augment_task(g.tasks_[i], options.alpha);
    for (std::size_t j = 0; j < augmented.size(); ++j) {
      Vertex v;
      v.kind = VertexKind::Task;
      v.task = static_cast<int>(i);
      v.index = static_cast<int>(j);
      v.waypoint = augmented[j];
      g.task_vertices_[i].push_back(add_vertex(v));
    }
    for (std::size_t j = 1; j < g.task_vertices_[i].size(); ++j)
      g.film_edges_[i].push_back(add_edge(g.task_vertices_[i][j - 1], g.task_vertices_[i][j], EdgeKind::Film));
  }

  // Base-station contacts, deduplicated per (station, role, time).
  std::vector<std::array<std::map<double, int>, 3>> registry(n_stations);
  auto station_vertex = [&](std::size_t s, StationRole role, double t) {
    auto& slot = registry[s][static_cast<std::size_t>(role)];
    auto it = slot.lower_bound(t - kTimeEps);
    if (it != slot.end() && it->first <= t + kTimeEps) return it->second;
    Vertex v;
    v.kind = VertexKind::Base;
    v.station = static_cast<int>(s);
    v.role = role;
    v.waypoint = {g.stations_[s].position_at(t), t};
    const int id = add_vertex(v);
    slot.emplace(t, id);
    return id;
  };

  for (std::size_t i = 0; i < n_tasks; ++i) {
    for (int v : g.task_vertices_[i]) {
      const Waypoint wp = g.vertices_[static_cast<std::size_t>(v)].waypoint;
      double best_return = std::numeric_limits<double>::infinity();
      std::vector<std::pair<std::size_t, double>> departures;
      for (std::size_t s = 0; s < n_stations; ++s) {
        if (auto tau = intercept_time(*planner, wp.position, wp.time, g.stations_[s], speed)) {
          best_return = std::min(best_return, *tau);
          add_edge(v, station_vertex(s, StationRole::Arrival, wp.time + *tau), EdgeKind::Arrive);
        }
        if (auto lead = departure_lead(*planner, g.stations_[s], wp.position, wp.time, speed)) {
          if (wp.time - *lead >= g.horizon_start_ - kTimeEps) departures.emplace_back(s, *lead);
        }
      }
      if (options.prune_dominated_departures && departures.size() > 1) {
        auto quickest = std::min_element(departures.begin(), departures.end(),
                                         [](const auto& a, const auto& b) { return a.second < b.second; });
        departures = {*quickest};
      }
      for (const auto& [s, lead] : departures)
        add_edge(station_vertex(s, StationRole::Departure, wp.time - lead), v, EdgeKind::Depart);
      g.return_time_[static_cast<std::size_t>(v)] = best_return;
    }
  }

  // Cross-task edges: each vertex to the first reachable vertex of every other task.
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const auto& from_list = g.task_vertices_[i];
    for (std::size_t pos = 0; pos < from_list.size(); ++pos) {
      const int u = from_list[pos];
      const Waypoint wu = g.vertices_[static_cast<std::size_t>(u)].waypoint;
      const bool u_is_last = pos + 1 == from_list.size();
      for (std::size_t k = 0; k < n_tasks; ++k) {
        if (k == i) continue;
        const auto& to_list = g.task_vertices_[k];
        auto first = std::lower_bound(to_list.begin(), to_list.end(), wu.time - kTimeEps, [&](int v, double t) {
          return g.vertices_[static_cast<std::size_t>(v)].time() < t;
        });
        for (auto it = first; it != to_list.end(); ++it) {
          const Waypoint wv = g.vertices_[static_cast<std::size_t>(*it)].waypoint;
          const double slack = wv.time - wu.time;
          const auto travel = planner->try_travel_time(wu.position, wv.position, speed);
          if (!travel || slack < *travel - kTimeEps) continue;
          const bool handover = u_is_last && it == to_list.begin() && *travel <= kTimeEps;
          if (slack <= kTimeEps && !handover) continue;
          add_edge(u, *it, EdgeKind::Cross);
          break;
        }
      }
    }
  }

  // Station chains: dwell edges between consecutive contacts of the same station.
  g.station_vertices_.resize(n_stations);
  for (std::size_t s = 0; s < n_stations; ++s) {
    auto& chain = g.station_vertices_[s];
    for (const auto& slot : registry[s])
      for (const auto& [t, id] : slot) chain.push_back(id);
    std::sort(chain.begin(), chain.end(), [&](int a, int b) {
      const Vertex& va = g.vertices_[static_cast<std::size_t>(a)];
      const Vertex& vb = g.vertices_[static_cast<std::size_t>(b)];
      return std::tuple(va.time(), static_cast<int>(va.role), a) < std::tuple(vb.time(), static_cast<int>(vb.role), b);
    });
    for (std::size_t j = 0; j < chain.size(); ++j) g.vertices_[static_cast<std::size_t>(chain[j])].index = static_cast<int>(j);
    for (std::size_t j = 1; j < chain.size(); ++j) add_edge(chain[j - 1], chain[j], EdgeKind::Dwell);
  }

  // Transfers between stations.
  for (std::size_t s = 0; s < n_stations; ++s) {
    for (int w : g.station_vertices_[s]) {
      const Waypoint ww = g.vertices_[static_cast<std::size_t>(w)].waypoint;
      for (std::size_t s2 = 0; s2 < n_stations; ++s2) {
        if (s2 == s) continue;
        for (int w2 : g.station_vertices_[s2]) {
          const Waypoint wv = g.vertices_[static_cast<std::size_t>(w2)].waypoint;
          if (wv.time <= ww.time + kTimeEps) continue;
          const auto travel = planner->try_travel_time(ww.position, wv.position, speed);
          if (travel && wv.time - ww.time >= *travel - kTimeEps) {
            add_edge(w, w2, EdgeKind::Transfer);
            break;
          }
        }
      }
    }
  }

  g.out_.assign(g.vertices_.size(), {});
  for (std::size_t e = 0; e < g.edges_.size(); ++e)
    g.out_[static_cast<std::size_t>(g.edges_[e].from)].push_back(static_cast<int>(e));
  g.order_ = topological_order(g.vertices_, g.edges_);

  for (std::size_t i = 0; i < n_tasks; ++i) {
    bool reachable = false;
    for (const auto& e : g.edges_)
      if (e.kind == EdgeKind::Depart && g.vertices_[static_cast<std::size_t>(e.to)].task == static_cast<int>(i))
        reachable = true;
    if (!reachable) g.warnings_.push_back({g.tasks_[i].id, "task unreachable from every base station"});
  }
  double min_battery = std::numeric_limits<double>::infinity();
  for (const auto& u : mission.uavs) min_battery = std::min(min_battery, u.battery_endurance);
  if (std::isfinite(min_battery) && options.alpha > min_battery / 10.0)
    g.warnings_.push_back({"", "alpha exceeds a tenth of the battery endurance; discretization is coarse"});
  return g;
}

FilmingView::FilmingView(const DiscretizationGraph& graph)
    : graph_(&graph), zeroed_(graph.tasks().size()) {
  values_.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) values_.push_back(e.filming_value);
}

std::vector<TimeInterval> FilmingView::uncovered_parts(int edge) const {
  const Edge& e = graph_->edges()[static_cast<std::size_t>(edge)];
  if (e.kind != EdgeKind::Film) return {};
  const Vertex& a = graph_->vertices()[static_cast<std::size_t>(e.from)];
  const Vertex& b = graph_->vertices()[static_cast<std::size_t>(e.to)];
  return subtract_intervals({a.time(), b.time()}, zeroed_[static_cast<std::size_t>(a.task)]);
}

FilmingView zero_filming(const FilmingView& view, std::span<const CoveredInterval> covered) {
  FilmingView out = view;
  const DiscretizationGraph& g = view.graph();
  std::vector<bool> touched(g.tasks().size(), false);
  for (const auto& c : covered) {
    const int task = g.task_index(c.task_id);
    if (task < 0) continue;
    out.zeroed_[static_cast<std::size_t>(task)].push_back(c.span);
    touched[static_cast<std::size_t>(task)] = true;
  }
  for (std::size_t t = 0; t < touched.size(); ++t) {
    if (!touched[t]) continue;
    auto& z = out.zeroed_[t];
    z = merge_intervals(std::move(z));
    for (int e : g.film_edges(static_cast<int>(t))) {
      const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
      const double t0 = g.vertices()[static_cast<std::size_t>(edge.from)].time();
      const double t1 = g.vertices()[static_cast<std::size_t>(edge.to)].time();
      out.values_[static_cast<std::size_t>(e)] = uncovered_length({t0, t1}, z);
    }
  }
  return out;
}

std::string dump_graph(const DiscretizationGraph& graph) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "# graph vertices=%zu edges=%zu alpha=%.6f speed=%.6f\n", graph.vertex_count(),
                graph.edge_count(), graph.alpha(), graph.uav_speed());
  os << buf;
  static constexpr std::array<const char*, 3> kRoles{"departure", "dwell", "arrival"};
  for (int v : graph.order()) {
    const Vertex& vx = graph.vertices()[static_cast<std::size_t>(v)];
    std::string kind;
    if (vx.is_base())
      kind = "base:" + graph.stations()[static_cast<std::size_t>(vx.station)].id + ":" +
             kRoles[static_cast<std::size_t>(vx.role)];
    else
      kind = "task:" + graph.tasks()[static_cast<std::size_t>(vx.task)].id;
    std::snprintf(buf, sizeof buf, "vertex %d %s#%d t=%.6f x=%.6f y=%.6f z=%.6f\n", v, kind.c_str(), vx.index,
                  vx.time(), vx.waypoint.position.x, vx.waypoint.position.y, vx.waypoint.position.z);
    os << buf;
    for (int e : graph.out_edges(v)) {
      const Edge& ed = graph.edges()[static_cast<std::size_t>(e)];
      std::snprintf(buf, sizeof buf, "  edge to=%d kind=%s travel=%.6f ft=%.6f battery=%.6f\n", ed.to,
                    std::string(to_string(ed.kind)).c_str(), ed.travel_time, ed.filming_value, ed.battery_cost);
      os << buf;
    }
  }
  return os.str();
}

}  // namespace cineplan
