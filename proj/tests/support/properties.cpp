#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cineplan::testing {

namespace {

constexpr double kEps = 1e-6;

double straight(const Vec3& a, const Vec3& b, double speed) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z)) / speed;
}

// Length of [a, b] not covered by `covered`, by sorting and walking.
double uncovered(double a, double b, std::vector<TimeInterval> covered) {
  std::sort(covered.begin(), covered.end(), [](const auto& x, const auto& y) { return x.start < y.start; });
  double cursor = a;
  double free = 0.0;
  for (const auto& c : covered) {
    const double s = std::max(c.start, a);
    const double e = std::min(c.end, b);
    if (e <= s) continue;
    if (s > cursor) free += s - cursor;
    cursor = std::max(cursor, e);
  }
  if (b > cursor) free += b - cursor;
  return free;
}

double union_of(const std::map<std::string, std::vector<TimeInterval>>& by_task) {
  double total = 0.0;
  for (const auto& [id, xs] : by_task) {
    if (xs.empty()) continue;
    double lo = xs.front().start;
    double hi = xs.front().end;
    for (const auto& x : xs) {
      lo = std::min(lo, x.start);
      hi = std::max(hi, x.end);
    }
    total += (hi - lo) - uncovered(lo, hi, xs);
  }
  return total;
}

std::string str(double v) { return std::to_string(v); }

}  // namespace

std::vector<std::string> check_acyclic(const DiscretizationGraph& graph) {
  std::vector<std::string> out;
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : graph.edges()) adj[static_cast<std::size_t>(e.from)].push_back(e.to);
  std::vector<int> colour(n, 0);
  for (std::size_t root = 0; root < n && out.empty(); ++root) {
    if (colour[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
    colour[root] = 1;
    while (!stack.empty() && out.empty()) {
      auto& [v, next] = stack.back();
      const auto& succ = adj[static_cast<std::size_t>(v)];
      if (next == succ.size()) {
        colour[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
        continue;
      }
      const int w = succ[next++];
      if (colour[static_cast<std::size_t>(w)] == 1) out.push_back("cycle through vertex " + std::to_string(w));
      if (colour[static_cast<std::size_t>(w)] == 0) {
        colour[static_cast<std::size_t>(w)] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  const auto& order = graph.order();
  std::vector<int> position(n, -1);
  if (order.size() != n) out.push_back("topological order has the wrong length");
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] < 0 || static_cast<std::size_t>(order[i]) >= n || position[static_cast<std::size_t>(order[i])] >= 0) {
      out.push_back("topological order is not a permutation");
      return out;
    }
    position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  }
  for (const auto& e : graph.edges())
    if (position[static_cast<std::size_t>(e.from)] >= position[static_cast<std::size_t>(e.to)])
      out.push_back("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " points backwards");
  for (const auto& e : graph.edges()) {
    const double dt = graph.vertices()[static_cast<std::size_t>(e.to)].time() -
                      graph.vertices()[static_cast<std::size_t>(e.from)].time();
    if (dt < -kEps) out.push_back("edge goes back in time");
  }
  return out;
}

std::vector<std::string> check_first_reachable(const DiscretizationGraph& graph) {
  std::vector<std::string> out;
  const auto& V = graph.vertices();
  const double speed = graph.uav_speed();
  const std::size_t n_tasks = graph.tasks().size();
  for (std::size_t i = 0; i < n_tasks; ++i) {
    const auto from = graph.task_vertices(static_cast<int>(i));
    for (std::size_t p = 0; p < from.size(); ++p) {
      const Vertex& u = V[static_cast<std::size_t>(from[p])];
      std::map<int, std::vector<int>> cross;  // task -> targets
      for (int e : graph.out_edges(u.id)) {
        const Edge& edge = graph.edges()[static_cast<std::size_t>(e)];
        if (edge.kind == EdgeKind::Cross) cross[V[static_cast<std::size_t>(edge.to)].task].push_back(edge.to);
      }
      for (std::size_t k = 0; k < n_tasks; ++k) {
        if (k == i) continue;
        const auto to = graph.task_vertices(static_cast<int>(k));
        int expected = -1;
        for (std::size_t q = 0; q < to.size() && expected < 0; ++q) {
          const Vertex& v = V[static_cast<std::size_t>(to[q])];
          const double slack = v.time() - u.time();
          const double travel = straight(u.waypoint.position, v.waypoint.position, speed);
          if (slack < travel - kEps) continue;
          const bool handover = p + 1 == from.size() && q == 0 && travel <= kEps;
          if (slack > kEps || (handover && slack >= -kEps)) expected = v.id;
        }
        const auto it = cross.find(static_cast<int>(k));
        const std::size_t got = it == cross.end() ? 0 : it->second.size();
        if (expected < 0 && got > 0)
          out.push_back("vertex " + std::to_string(u.id) + " has a cross edge to unreachable task " +
                        graph.tasks()[k].id);
        if (expected >= 0 && (got != 1 || it->second.front() != expected))
          out.push_back("vertex " + std::to_string(u.id) + " should link to vertex " + std::to_string(expected) +
                        " of task " + graph.tasks()[k].id);
      }
    }
  }
  return out;
}

std::vector<std::string> check_film_sums(const DiscretizationGraph& graph) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < graph.tasks().size(); ++i) {
    const ShootingTask& task = graph.tasks()[i];
    double sum = 0.0;
    double cursor = task.start_time();
    std::vector<const Edge*> film;
    for (const auto& e : graph.edges())
      if (e.kind == EdgeKind::Film && graph.vertices()[static_cast<std::size_t>(e.from)].task == static_cast<int>(i))
        film.push_back(&e);
    std::sort(film.begin(), film.end(), [&](const Edge* a, const Edge* b) {
      return graph.vertices()[static_cast<std::size_t>(a->from)].time() <
             graph.vertices()[static_cast<std::size_t>(b->from)].time();
    });
    for (const Edge* e : film) {
      const double t0 = graph.vertices()[static_cast<std::size_t>(e->from)].time();
      const double t1 = graph.vertices()[static_cast<std::size_t>(e->to)].time();
      if (std::abs(t0 - cursor) > 1e-9) out.push_back("film edges of " + task.id + " leave a gap at " + str(cursor));
      if (std::abs(e->filming_value - (t1 - t0)) > 1e-9) out.push_back("film edge value differs from its span");
      if (t1 - t0 > graph.alpha() + 1e-9) out.push_back("film edge of " + task.id + " longer than alpha");
      sum += e->filming_value;
      cursor = t1;
    }
    if (std::abs(sum - task.duration()) > 1e-9)
      out.push_back("film values of " + task.id + " sum to " + str(sum) + " instead of " + str(task.duration()));
  }
  return out;
}

std::vector<std::string> check_union_vs_edge_sum(const DiscretizationGraph& graph,
                                                 const PlanAssignment& assignment) {
  std::vector<std::string> out;
  std::map<std::string, std::vector<TimeInterval>> covered;
  for (const auto& c : assignment.previously_covered) covered[c.task_id].push_back(c.span);
  double edge_total = 0.0;
  const double base = union_of(covered);
  for (const auto& plan : assignment.plans) {
    double edge_sum = 0.0;
    for (const auto& step : plan.steps) {
      if (step.edge < 0) continue;
      const Edge& e = graph.edges()[static_cast<std::size_t>(step.edge)];
      if (e.kind != EdgeKind::Film) continue;
      const Vertex& a = graph.vertices()[static_cast<std::size_t>(e.from)];
      const Vertex& b = graph.vertices()[static_cast<std::size_t>(e.to)];
      const std::string& id = graph.tasks()[static_cast<std::size_t>(a.task)].id;
      edge_sum += uncovered(a.time(), b.time(), covered[id]);
    }
    const double before = union_of(covered);
    for (const auto& c : plan.covered) covered[c.task_id].push_back(c.span);
    const double growth = union_of(covered) - before;
    if (std::abs(edge_sum - plan.filming_time) > 1e-9)
      out.push_back(plan.uav_id + ": edge-sum FT " + str(edge_sum) + " vs reported " + str(plan.filming_time));
    if (std::abs(edge_sum - growth) > 1e-9)
      out.push_back(plan.uav_id + ": edge-sum FT " + str(edge_sum) + " vs union growth " + str(growth));
    edge_total += edge_sum;
  }
  const double total = union_of(covered);
  if (std::abs(total - assignment.total_filming_time) > 1e-9)
    out.push_back("union FT " + str(total) + " vs reported total " + str(assignment.total_filming_time));
  if (std::abs(base + edge_total - total) > 1e-9)
    out.push_back("summed edge FT " + str(base + edge_total) + " vs union " + str(total));
  return out;
}

}  // namespace cineplan::testing
