#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cineplan/greedy.hpp"
#include "cineplan/mission.hpp"

namespace cineplan {

struct TaskSpan {
  std::string id;
  TimeInterval span;
  friend bool operator==(const TaskSpan&, const TaskSpan&) = default;
};

/// Everything a plan file holds.
struct PlanDocument {
  double alpha = 0.0;
  double relay_gap = 0.0;
  std::vector<TaskSpan> tasks;
  PlanAssignment assignment;
};

/// Plan JSON. The task spans make the file self-contained for metric
/// recomputation. No timing data is written.
std::string export_plan(const PlanAssignment& assignment, std::span<const ShootingTask> tasks, double alpha,
                        double relay_gap);
/// Parses a plan file. Step lists are not stored in the file and come back empty.
PlanDocument import_plan(std::string_view content);

/// FT and CR recomputed from a plan document alone.
AssignmentMetrics recompute_metrics(const PlanDocument& doc);

/// Columns: uav_id, kind, t_start, t_end, task_id.
std::string export_gantt(const PlanAssignment& assignment);

/// Execution state JSON: `clock`, `uavs[]` (`id`, `x`, `y`, `z`, `battery`),
/// `covered[]` (`task_id`, `start`, `end`). UAV ids and batteries are
/// checked against `mission`.
ExecutionState load_execution_state(std::string_view content, const Mission& mission);
std::string save_execution_state(const ExecutionState& state);

/// Human-readable per-UAV table with FT, CR and the planning time.
std::string summary_table(const PlanAssignment& assignment, double planning_ms);

}  // namespace cineplan
