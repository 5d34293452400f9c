#include "cineplan/greedy.hpp"

#include <algorithm>
#include <map>

#include "cineplan/errors.hpp"

namespace cineplan {

namespace {

bool same_start(const UavState& a, const UavSpec& sa, const UavState& b, const UavSpec& sb) {
  return a.position == b.position && a.clock == b.clock && a.battery_remaining == b.battery_remaining &&
         sa.battery_endurance == sb.battery_endurance && sa.cruise_speed == sb.cruise_speed;
}

SingleUavPlan relabel(SingleUavPlan plan, const UavState& state) {
  plan.uav_id = state.uav_id;
  plan.start = state;
  return plan;
}

std::vector<CoveredInterval> with_relay_gap(const DiscretizationGraph& graph, std::span<const CoveredInterval> covered,
                                            double gap) {
  std::vector<CoveredInterval> out(covered.begin(), covered.end());
  if (gap <= 0.0) return out;
  for (auto& c : out) {
    const int task = graph.task_index(c.task_id);
    if (task < 0) continue;
    c.span.end = std::min(c.span.end + gap, graph.tasks()[static_cast<std::size_t>(task)].end_time());
  }
  return out;
}

void map_task_ids(SingleUavPlan& plan, const std::map<std::string, std::string>& parents) {
  auto parent = [&](const std::string& id) {
    auto it = parents.find(id);
    return it == parents.end() ? id : it->second;
  };
  for (auto& c : plan.covered) c.task_id = parent(c.task_id);
  for (auto& s : plan.segments)
    if (!s.task_id.empty()) s.task_id = parent(s.task_id);
}

}  // namespace

AssignmentMetrics compute_coverage_metrics(std::span<const CoveredInterval> covered,
                                           std::span<const ShootingTask> tasks) {
  AssignmentMetrics m;
  double total = 0.0;
  for (const auto& task : tasks) {
    total += task.duration();
    std::vector<TimeInterval> clipped;
    for (const auto& c : covered) {
      if (c.task_id != task.id) continue;
      const TimeInterval span{std::max(c.span.start, task.start_time()), std::min(c.span.end, task.end_time())};
      if (span.end > span.start) clipped.push_back(span);
    }
    m.filming_time += union_length(clipped);
  }
  m.coverage_ratio = total > 0.0 ? m.filming_time / total : 0.0;
  return m;
}

AssignmentMetrics compute_assignment_metrics(std::span<const SingleUavPlan> plans,
                                             std::span<const ShootingTask> tasks) {
  std::vector<CoveredInterval> covered;
  for (const auto& p : plans) covered.insert(covered.end(), p.covered.begin(), p.covered.end());
  return compute_coverage_metrics(covered, tasks);
}

PlanAssignment solve_multi(const Mission& mission, const DiscretizationGraph& graph,
                           std::span<const UavState> states, const GreedyOptions& options) {
  std::vector<const UavSpec*> specs;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const UavSpec* spec = mission.find_uav(states[i].uav_id);
    if (!spec) throw ValidationError("states[" + std::to_string(i) + "].uav_id", "unknown UAV '" + states[i].uav_id + "'");
    specs.push_back(spec);
  }
  const double min_gain = options.min_gain.value_or(graph.alpha() / 10.0);

  PlanAssignment out;
  FilmingView view(graph);
  std::vector<std::size_t> remaining(states.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

  while (!remaining.empty()) {
    std::vector<SingleUavPlan> candidates;
    candidates.reserve(remaining.size());
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const std::size_t i = remaining[r];
      std::optional<std::size_t> twin;
      if (options.share_identical)
        for (std::size_t q = 0; q < r && !twin; ++q)
          if (same_start(states[remaining[q]], *specs[remaining[q]], states[i], *specs[i])) twin = q;
      if (twin)
        candidates.push_back(relabel(candidates[*twin], states[i]));
      else
        candidates.push_back(solve_single(view, states[i], *specs[i]));
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < candidates.size(); ++r)
      if (candidates[r].filming_time > candidates[best].filming_time) best = r;
    if (candidates[best].filming_time < min_gain) break;

    SingleUavPlan chosen = std::move(candidates[best]);
    out.iteration_gains.push_back(chosen.filming_time);
    view = zero_filming(view, with_relay_gap(graph, chosen.covered, options.relay_gap));
    out.plans.push_back(std::move(chosen));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  for (std::size_t i : remaining) out.plans.push_back(make_empty_plan(graph, states[i]));

  const AssignmentMetrics m = compute_assignment_metrics(out.plans, mission.tasks);
  out.total_filming_time = m.filming_time;
  out.coverage_ratio = m.coverage_ratio;
  out.total_task_duration = mission.total_task_duration();
  return out;
}

ResidualMission residual_mission(const Mission& mission, const ExecutionState& exec, double alpha) {
  ResidualMission out;
  out.mission.epoch = std::max(mission.epoch, exec.clock);
  out.mission.base_stations = mission.base_stations;
  out.mission.uavs = mission.uavs;
  out.mission.map = mission.map;
  for (const auto& task : mission.tasks) {
    std::vector<TimeInterval> covered = intervals_for_task(exec.covered, task.id);
    if (exec.clock > task.start_time()) covered.push_back({task.start_time(), std::min(exec.clock, task.end_time())});
    for (auto& fragment : subtract_covered(task, covered, alpha / 2.0)) {
      out.parent_ids.emplace_back(fragment.id, task.id);
      out.mission.tasks.push_back(std::move(fragment));
    }
  }
  return out;
}

PlanAssignment replan(const Mission& mission, const ExecutionState& exec, double alpha, const GreedyOptions& options) {
  const ResidualMission residual = residual_mission(mission, exec, alpha);
  GraphOptions go;
  go.alpha = alpha;
  go.uav_speed = mission.fleet_speed();
  go.horizon_start = exec.clock;
  const DiscretizationGraph graph = build_graph(residual.mission, go);

  PlanAssignment out = solve_multi(residual.mission, graph, exec.uavs, options);
  const std::map<std::string, std::string> parents(residual.parent_ids.begin(), residual.parent_ids.end());
  std::vector<CoveredInterval> all(exec.covered.begin(), exec.covered.end());
  for (auto& plan : out.plans) {
    map_task_ids(plan, parents);
    all.insert(all.end(), plan.covered.begin(), plan.covered.end());
  }
  const AssignmentMetrics m = compute_coverage_metrics(all, mission.tasks);
  out.total_filming_time = m.filming_time;
  out.coverage_ratio = m.coverage_ratio;
  out.total_task_duration = mission.total_task_duration();
  out.replanned_from = exec.clock;
  out.previously_covered = exec.covered;
  return out;
}

PlanAssignment plan_mission(const Mission& mission, double alpha, const GreedyOptions& options) {
  GraphOptions go;
  go.alpha = alpha;
  go.uav_speed = mission.fleet_speed();
  const DiscretizationGraph graph = build_graph(mission, go);
  const std::vector<UavState> states = initial_states(mission);
  return solve_multi(mission, graph, states, options);
}

}  // namespace cineplan
