#include "cineplan/report.hpp"

#include <cstdio>
#include <sstream>

#include "json_fields.hpp"

namespace cineplan {

using namespace detail;

namespace {

json point_json(const Vec3& p) { return json{{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

Vec3 parse_point(const json& parent, const std::string& parent_path, std::string_view key) {
  const std::string path = join(parent_path, key);
  auto it = parent.find(key);
  if (it == parent.end()) throw ValidationError(path, "missing required point");
  const json& j = *it;
  check_keys(j, path, {"x", "y", "z"});
  return {number(j, path, "x"), number(j, path, "y"), number(j, path, "z")};
}

json covered_json(std::span<const CoveredInterval> covered) {
  json arr = json::array();
  for (const auto& c : covered) arr.push_back({{"task_id", c.task_id}, {"start", c.span.start}, {"end", c.span.end}});
  return arr;
}

std::vector<CoveredInterval> parse_covered(const json& arr, const std::string& path) {
  std::vector<CoveredInterval> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = at(path, i);
    check_keys(arr[i], p, {"task_id", "start", "end"});
    CoveredInterval c{text(arr[i], p, "task_id"), {number(arr[i], p, "start"), number(arr[i], p, "end")}};
    if (c.span.end < c.span.start) throw ValidationError(p, "interval end before start");
    out.push_back(std::move(c));
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::string export_plan(const PlanAssignment& assignment, std::span<const ShootingTask> tasks, double alpha,
                        double relay_gap) {
  json doc;
  doc["alpha"] = alpha;
  doc["relay_gap"] = relay_gap;
  doc["total_filming_time"] = assignment.total_filming_time;
  doc["coverage_ratio"] = assignment.coverage_ratio;
  doc["total_task_duration"] = assignment.total_task_duration;
  json spans = json::array();
  for (const auto& t : tasks) spans.push_back({{"id", t.id}, {"start", t.start_time()}, {"end", t.end_time()}});
  doc["tasks"] = std::move(spans);
  doc["iteration_gains"] = assignment.iteration_gains;
  if (assignment.replanned_from)
    doc["replanned_from"] = {{"clock", *assignment.replanned_from},
                             {"previously_covered", covered_json(assignment.previously_covered)}};
  json plans = json::array();
  for (const auto& p : assignment.plans) {
    json segs = json::array();
    for (const auto& s : p.segments) {
      json js{{"kind", std::string(to_string(s.kind))},
              {"t_start", s.t_start()},
              {"t_end", s.t_end()},
              {"from", point_json(s.from.position)},
              {"to", point_json(s.to.position)}};
      if (!s.task_id.empty()) js["task_id"] = s.task_id;
      segs.push_back(std::move(js));
    }
    plans.push_back({{"uav_id", p.uav_id},
                     {"start",
                      {{"x", p.start.position.x},
                       {"y", p.start.position.y},
                       {"z", p.start.position.z},
                       {"clock", p.start.clock},
                       {"battery", p.start.battery_remaining}}},
                     {"filming_time", p.filming_time},
                     {"segments", std::move(segs)},
                     {"covered", covered_json(p.covered)}});
  }
  doc["plans"] = std::move(plans);
  return doc.dump(2) + "\n";
}

PlanDocument import_plan(std::string_view content) {
  const json doc = parse_json(content);
  check_keys(doc, "", {"alpha", "relay_gap", "total_filming_time", "coverage_ratio", "total_task_duration", "tasks",
                       "iteration_gains", "replanned_from", "plans"});
  PlanDocument out;
  out.alpha = number(doc, "", "alpha");
  out.relay_gap = number(doc, "", "relay_gap");
  out.assignment.total_filming_time = number(doc, "", "total_filming_time");
  out.assignment.coverage_ratio = number(doc, "", "coverage_ratio");
  out.assignment.total_task_duration = number(doc, "", "total_task_duration");
  const json& spans = array(doc, "", "tasks");
  for (std::size_t i = 0; i < spans.size(); ++i) {
    const std::string p = at("tasks", i);
    check_keys(spans[i], p, {"id", "start", "end"});
    out.tasks.push_back({text(spans[i], p, "id"), {number(spans[i], p, "start"), number(spans[i], p, "end")}});
  }
  const json& gains = array(doc, "", "iteration_gains");
  for (std::size_t i = 0; i < gains.size(); ++i) {
    if (!gains[i].is_number()) throw ValidationError(at("iteration_gains", i), "expected a number");
    out.assignment.iteration_gains.push_back(gains[i].get<double>());
  }
  if (auto it = doc.find("replanned_from"); it != doc.end()) {
    check_keys(*it, "replanned_from", {"clock", "previously_covered"});
    out.assignment.replanned_from = number(*it, "replanned_from", "clock");
    out.assignment.previously_covered =
        parse_covered(array(*it, "replanned_from", "previously_covered"), "replanned_from.previously_covered");
  }
  const json& plans = array(doc, "", "plans");
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const std::string p = at("plans", i);
    check_keys(plans[i], p, {"uav_id", "start", "filming_time", "segments", "covered"});
    SingleUavPlan plan;
    plan.uav_id = text(plans[i], p, "uav_id");
    plan.start.uav_id = plan.uav_id;
    if (auto st = plans[i].find("start"); st != plans[i].end()) {
      const std::string sp = p + ".start";
      check_keys(*st, sp, {"x", "y", "z", "clock", "battery"});
      plan.start.position = {number(*st, sp, "x"), number(*st, sp, "y"), number(*st, sp, "z")};
      plan.start.clock = number(*st, sp, "clock");
      plan.start.battery_remaining = number(*st, sp, "battery");
    }
    plan.filming_time = number(plans[i], p, "filming_time");
    const json& segs = array(plans[i], p, "segments");
    for (std::size_t k = 0; k < segs.size(); ++k) {
      const std::string sp = at(p + ".segments", k);
      check_keys(segs[k], sp, {"kind", "t_start", "t_end", "from", "to", "task_id"});
      const std::string kind_name = text(segs[k], sp, "kind");
      const auto kind = parse_segment_kind(kind_name);
      if (!kind) throw ValidationError(sp + ".kind", "unknown segment kind '" + kind_name + "'");
      PlanSegment seg;
      seg.kind = *kind;
      seg.from = {parse_point(segs[k], sp, "from"), number(segs[k], sp, "t_start")};
      seg.to = {parse_point(segs[k], sp, "to"), number(segs[k], sp, "t_end")};
      if (segs[k].contains("task_id")) seg.task_id = text(segs[k], sp, "task_id");
      plan.segments.push_back(std::move(seg));
    }
    plan.covered = parse_covered(array(plans[i], p, "covered"), p + ".covered");
    out.assignment.plans.push_back(std::move(plan));
  }
  return out;
}

AssignmentMetrics recompute_metrics(const PlanDocument& doc) {
  std::vector<ShootingTask> tasks;
  for (const auto& t : doc.tasks) {
    ShootingTask task;
    task.id = t.id;
    task.waypoints = {{{}, t.span.start}, {{}, t.span.end}};
    tasks.push_back(std::move(task));
  }
  std::vector<CoveredInterval> all = doc.assignment.previously_covered;
  for (const auto& p : doc.assignment.plans) all.insert(all.end(), p.covered.begin(), p.covered.end());
  return compute_coverage_metrics(all, tasks);
}

std::string export_gantt(const PlanAssignment& assignment) {
  std::ostringstream os;
  os << "uav_id,kind,t_start,t_end,task_id\n";
  for (const auto& p : assignment.plans)
    for (const auto& s : p.segments)
      os << p.uav_id << ',' << to_string(s.kind) << ',' << fmt(s.t_start()) << ',' << fmt(s.t_end()) << ','
         << s.task_id << '\n';
  return os.str();
}

ExecutionState load_execution_state(std::string_view content, const Mission& mission) {
  const json doc = parse_json(content);
  check_keys(doc, "", {"clock", "uavs", "covered"});
  ExecutionState state;
  state.clock = number(doc, "", "clock");
  if (state.clock < mission.epoch) throw ValidationError("clock", "clock before the mission epoch");
  const json& uavs = array(doc, "", "uavs");
  for (std::size_t i = 0; i < uavs.size(); ++i) {
    const std::string p = at("uavs", i);
    check_keys(uavs[i], p, {"id", "x", "y", "z", "battery"});
    UavState s;
    s.uav_id = text(uavs[i], p, "id");
    s.position = {number(uavs[i], p, "x"), number(uavs[i], p, "y"), number(uavs[i], p, "z")};
    s.clock = state.clock;
    s.battery_remaining = number(uavs[i], p, "battery");
    const UavSpec* spec = mission.find_uav(s.uav_id);
    if (!spec) throw ValidationError(p + ".id", "unknown UAV '" + s.uav_id + "'");
    if (s.battery_remaining < 0.0 || s.battery_remaining > spec->battery_endurance)
      throw ValidationError(p + ".battery", "battery outside [0, battery_endurance]");
    for (const auto& other : state.uavs)
      if (other.uav_id == s.uav_id) throw ValidationError(p + ".id", "duplicate UAV '" + s.uav_id + "'");
    state.uavs.push_back(std::move(s));
  }
  if (doc.contains("covered")) {
    state.covered = parse_covered(array(doc, "", "covered"), "covered");
    for (std::size_t i = 0; i < state.covered.size(); ++i)
      if (!mission.find_task(state.covered[i].task_id))
        throw ValidationError(at("covered", i) + ".task_id", "unknown task '" + state.covered[i].task_id + "'");
  }
  return state;
}

std::string save_execution_state(const ExecutionState& state) {
  json doc;
  doc["clock"] = state.clock;
  json uavs = json::array();
  for (const auto& s : state.uavs)
    uavs.push_back({{"id", s.uav_id},
                    {"x", s.position.x},
                    {"y", s.position.y},
                    {"z", s.position.z},
                    {"battery", s.battery_remaining}});
  doc["uavs"] = std::move(uavs);
  doc["covered"] = covered_json(state.covered);
  return doc.dump(2) + "\n";
}

std::string summary_table(const PlanAssignment& assignment, double planning_ms) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %12s %9s\n", "uav", "filming_s", "segments");
  os << buf;
  for (const auto& p : assignment.plans) {
    std::snprintf(buf, sizeof buf, "%-12s %12.3f %9zu\n", p.uav_id.c_str(), p.filming_time, p.segments.size());
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "FT %.3f s of %.3f s  CR %.4f  planning %.3f ms\n", assignment.total_filming_time,
                assignment.total_task_duration, assignment.coverage_ratio, planning_ms);
  os << buf;
  return os.str();
}

}  // namespace cineplan
