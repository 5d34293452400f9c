#include "cineplan/dp_solver.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "cineplan/errors.hpp"

namespace cineplan {

namespace {

constexpr double kNever = -std::numeric_limits<double>::infinity();
constexpr double kDockTolerance = 1e-3;

const Vertex& vertex_of(const DiscretizationGraph& g, int v) { return g.vertices()[static_cast<std::size_t>(v)]; }

void seed_start(const DiscretizationGraph& g, const UavState& start, const UavSpec& spec, LabelTable& table) {
  const double b = spec.battery_endurance;
  auto offer = [&](int v, const Label& l) {
    ++table.generated;
    table.sets[static_cast<std::size_t>(v)].insert(l);
  };
  if (auto s = docked_station(g, start)) {
    const BaseStation& station = g.stations()[static_cast<std::size_t>(*s)];
    for (int v : g.station_vertices(*s)) {
      if (vertex_of(g, v).time() < start.clock - kTimeEps) continue;
      const double delay = start.battery_remaining < b - kTimeEps ? station.recharge_delay : 0.0;
      offer(v, {0.0, b, start.clock + delay});
      break;
    }
    return;
  }
  for (const Vertex& v : g.vertices()) {
    const double dt = v.time() - start.clock;
    if (dt < -kTimeEps) continue;
    const auto travel = g.planner().try_travel_time(start.position, v.waypoint.position, g.uav_speed());
    if (!travel || *travel > dt + kTimeEps) continue;
    const double spent = std::max(0.0, dt);
    if (v.is_base()) {
      if (start.battery_remaining + kTimeEps < spent) continue;
      offer(v.id, {0.0, b, v.time() + g.stations()[static_cast<std::size_t>(v.station)].recharge_delay});
    } else {
      if (start.battery_remaining + kTimeEps < spent + g.return_time(v.id)) continue;
      offer(v.id, {0.0, start.battery_remaining - spent, kNever});
    }
  }
}

bool same_point(const Vec3& a, const Vec3& b) { return distance(a, b) <= 1e-9; }

}  // namespace

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::Navigate: return "navigate";
    case SegmentKind::Film: return "film";
    case SegmentKind::Recharge: return "recharge";
    case SegmentKind::Dwell: return "dwell";
  }
  return "?";
}

std::optional<SegmentKind> parse_segment_kind(std::string_view name) {
  for (auto k : {SegmentKind::Navigate, SegmentKind::Film, SegmentKind::Recharge, SegmentKind::Dwell})
    if (to_string(k) == name) return k;
  return std::nullopt;
}

bool dominates(const Label& a, const Label& b) {
  return a.filming_time >= b.filming_time && a.battery >= b.battery && a.ready_time <= b.ready_time;
}

bool LabelSet::insert(const Label& label) {
  for (const auto& l : labels_)
    if (dominates(l, label)) return false;
  std::erase_if(labels_, [&](const Label& l) { return dominates(label, l); });
  labels_.push_back(label);
  return true;
}

std::optional<int> docked_station(const DiscretizationGraph& graph, const UavState& state) {
  for (std::size_t s = 0; s < graph.stations().size(); ++s)
    if (distance(graph.stations()[s].position_at(state.clock), state.position) <= kDockTolerance)
      return static_cast<int>(s);
  return std::nullopt;
}

LabelTable solve_labels(const FilmingView& view, const UavState& start, const UavSpec& spec) {
  const DiscretizationGraph& g = view.graph();
  const double b = spec.battery_endurance;
  LabelTable table;
  table.sets.resize(g.vertex_count());
  seed_start(g, start, spec, table);

  for (int u : g.order()) {
    const Vertex& U = vertex_of(g, u);
    const LabelSet& here = table.sets[static_cast<std::size_t>(u)];
    for (std::size_t li = 0; li < here.size(); ++li) {
      const Label& l = here[li];
      for (int e : g.out_edges(u)) {
        const Edge& edge = g.edges()[static_cast<std::size_t>(e)];
        const Vertex& W = vertex_of(g, edge.to);
        Label next = l;
        next.pred_vertex = u;
        next.pred_label = static_cast<int>(li);
        next.pred_edge = e;
        if (edge.kind != EdgeKind::Dwell) {
          if (U.is_base() && U.time() + kTimeEps < l.ready_time) continue;
          const double reserve = W.is_base() ? 0.0 : g.return_time(edge.to);
          if (l.battery + kTimeEps < edge.battery_cost + reserve) continue;
          next.filming_time = l.filming_time + view.value(e);
          if (W.is_base()) {
            next.battery = b;
            next.ready_time = W.time() + g.stations()[static_cast<std::size_t>(W.station)].recharge_delay;
          } else {
            next.battery = l.battery - edge.battery_cost;
            next.ready_time = kNever;
          }
        }
        ++table.generated;
        table.sets[static_cast<std::size_t>(edge.to)].insert(next);
      }
    }
  }
  return table;
}

SingleUavPlan plan_from_steps(const FilmingView& view, const UavState& start, std::vector<PlanStep> steps) {
  const DiscretizationGraph& g = view.graph();
  SingleUavPlan plan;
  plan.uav_id = start.uav_id;
  plan.start = start;
  while (steps.size() > 1 && g.edges()[static_cast<std::size_t>(steps.back().edge)].kind == EdgeKind::Dwell)
    steps.pop_back();
  plan.steps = std::move(steps);
  if (plan.steps.empty()) return plan;

  const Waypoint origin{start.position, start.clock};
  const Vertex& first = vertex_of(g, plan.steps.front().vertex);
  const bool docked = docked_station(g, start).has_value() && first.is_base();
  auto push_navigate = [&](const Waypoint& a, const Waypoint& b) {
    if (b.time - a.time <= kTimeEps && same_point(a.position, b.position)) return;
    plan.segments.push_back({SegmentKind::Navigate, a, b, {}});
  };
  bool after_sortie = false;
  if (docked) {
    if (first.time() - start.clock > kTimeEps) plan.segments.push_back({SegmentKind::Dwell, origin, first.waypoint, {}});
  } else {
    push_navigate(origin, first.waypoint);
    after_sortie = first.is_base();
  }

  std::map<std::string, std::vector<TimeInterval>> covered;
  std::vector<std::string> task_order;
  for (std::size_t i = 1; i < plan.steps.size(); ++i) {
    const Edge& edge = g.edges()[static_cast<std::size_t>(plan.steps[i].edge)];
    const Vertex& a = vertex_of(g, edge.from);
    const Vertex& b = vertex_of(g, edge.to);
    switch (edge.kind) {
      case EdgeKind::Film: {
        const std::string& id = g.tasks()[static_cast<std::size_t>(a.task)].id;
        if (!plan.segments.empty() && plan.segments.back().kind == SegmentKind::Film &&
            plan.segments.back().task_id == id && plan.segments.back().to.time == a.time())
          plan.segments.back().to = b.waypoint;
        else
          plan.segments.push_back({SegmentKind::Film, a.waypoint, b.waypoint, id});
        plan.filming_time += view.value(plan.steps[i].edge);
        if (!covered.contains(id)) task_order.push_back(id);
        auto& list = covered[id];
        for (const auto& part : view.uncovered_parts(plan.steps[i].edge)) list.push_back(part);
        break;
      }
      case EdgeKind::Dwell: {
        const SegmentKind kind = after_sortie ? SegmentKind::Recharge : SegmentKind::Dwell;
        if (!plan.segments.empty() && plan.segments.back().kind == kind && plan.segments.back().to.time == a.time() &&
            same_point(plan.segments.back().to.position, a.waypoint.position))
          plan.segments.back().to = b.waypoint;
        else
          plan.segments.push_back({kind, a.waypoint, b.waypoint, {}});
        break;
      }
      default:
        push_navigate(a.waypoint, b.waypoint);
        if (b.is_base()) after_sortie = true;
        break;
    }
  }
  for (const auto& id : task_order)
    for (const auto& span : merge_intervals(covered[id])) plan.covered.push_back({id, span});
  return plan;
}

SingleUavPlan reconstruct(const FilmingView& view, const LabelTable& table, const UavState& start, int vertex,
                          int label) {
  std::vector<PlanStep> steps;
  const std::size_t guard = view.graph().vertex_count() + 1;
  int v = vertex;
  int li = label;
  while (true) {
    if (v < 0 || static_cast<std::size_t>(v) >= table.sets.size() || li < 0 ||
        static_cast<std::size_t>(li) >= table.sets[static_cast<std::size_t>(v)].size() || steps.size() > guard)
      throw std::logic_error("broken predecessor chain");
    const Label& l = table.sets[static_cast<std::size_t>(v)][static_cast<std::size_t>(li)];
    steps.push_back({v, l.pred_edge});
    if (l.pred_vertex < 0) break;
    v = l.pred_vertex;
    li = l.pred_label;
  }
  std::reverse(steps.begin(), steps.end());
  SingleUavPlan plan = plan_from_steps(view, start, std::move(steps));
  return plan;
}

SingleUavPlan make_empty_plan(const DiscretizationGraph& graph, const UavState& start) {
  SingleUavPlan plan;
  plan.uav_id = start.uav_id;
  plan.start = start;
  if (docked_station(graph, start)) return plan;
  try {
    const ReturnEstimate r = return_cost(graph.planner(), start.position, start.clock, graph.stations(), graph.uav_speed());
    const BaseStation& s = graph.stations()[r.station];
    const double arrive = start.clock + r.time;
    plan.segments.push_back({SegmentKind::Navigate, {start.position, start.clock}, {s.position_at(arrive), arrive}, {}});
  } catch (const NoPathError&) {
  }
  return plan;
}

SingleUavPlan solve_single(const FilmingView& view, const UavState& start, const UavSpec& spec) {
  const DiscretizationGraph& g = view.graph();
  const LabelTable table = solve_labels(view, start, spec);
  int best_v = -1;
  int best_l = -1;
  for (const Vertex& v : g.vertices()) {
    if (!v.is_base()) continue;
    const LabelSet& set = table.sets[static_cast<std::size_t>(v.id)];
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (best_v < 0) {
        best_v = v.id;
        best_l = static_cast<int>(i);
        continue;
      }
      const Label& cur = set[i];
      const Label& best = table.sets[static_cast<std::size_t>(best_v)][static_cast<std::size_t>(best_l)];
      const double t_best = vertex_of(g, best_v).time();
      bool better = false;
      if (cur.filming_time != best.filming_time)
        better = cur.filming_time > best.filming_time;
      else if (cur.battery != best.battery)
        better = cur.battery > best.battery;
      else if (v.time() != t_best)
        better = v.time() < t_best;
      if (better) {
        best_v = v.id;
        best_l = static_cast<int>(i);
      }
    }
  }
  if (best_v < 0) return make_empty_plan(g, start);
  SingleUavPlan plan = reconstruct(view, table, start, best_v, best_l);
  plan.filming_time = table.sets[static_cast<std::size_t>(best_v)][static_cast<std::size_t>(best_l)].filming_time;
  if (plan.filming_time <= 0.0 && docked_station(g, start)) return make_empty_plan(g, start);
  return plan;
}

SingleUavPlan solve_single(const DiscretizationGraph& graph, const UavState& start, const UavSpec& spec) {
  return solve_single(FilmingView(graph), start, spec);
}

}  // namespace cineplan
