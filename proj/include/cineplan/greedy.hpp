#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cineplan/dp_solver.hpp"
#include "cineplan/graph.hpp"
#include "cineplan/mission.hpp"
#include "cineplan/plan.hpp"

namespace cineplan {

struct PlanAssignment {
  /// Plans in assignment order; UAVs left without work follow in input order.
  std::vector<SingleUavPlan> plans;
  double total_filming_time = 0.0;
  double coverage_ratio = 0.0;
  double total_task_duration = 0.0;
  std::vector<double> iteration_gains;
  /// Set by replan: clock of the re-plan and coverage credited before it.
  std::optional<double> replanned_from;
  std::vector<CoveredInterval> previously_covered;
};

struct ExecutionState {
  double clock = 0.0;
  std::vector<UavState> uavs;  ///< surviving UAVs only
  std::vector<CoveredInterval> covered;
};

struct GreedyOptions {
  double relay_gap = 0.0;
  /// Solve once per group of UAVs with identical state and spec.
  bool share_identical = true;
  /// Stop when the best gain falls below this. Defaults to alpha / 10.
  std::optional<double> min_gain;
};

struct AssignmentMetrics {
  double filming_time = 0.0;
  double coverage_ratio = 0.0;
};

/// Filming time by the union definition, clipped to task spans, and the
/// ratio to the summed task durations.
AssignmentMetrics compute_assignment_metrics(std::span<const SingleUavPlan> plans,
                                             std::span<const ShootingTask> tasks);
AssignmentMetrics compute_coverage_metrics(std::span<const CoveredInterval> covered,
                                           std::span<const ShootingTask> tasks);

/// Greedy k-UAV planner: each round solves every unassigned UAV on the current
/// filming view and commits the best one.
PlanAssignment solve_multi(const Mission& mission, const DiscretizationGraph& graph,
                           std::span<const UavState> states, const GreedyOptions& options = {});

/// Plans the remaining work from a mid-mission state.
PlanAssignment replan(const Mission& mission, const ExecutionState& exec, double alpha,
                      const GreedyOptions& options = {});

/// Mission restricted to what is still filmable at `clock`, with a map from
/// fragment ids to the original task ids.
struct ResidualMission {
  Mission mission;
  std::vector<std::pair<std::string, std::string>> parent_ids;
};
ResidualMission residual_mission(const Mission& mission, const ExecutionState& exec, double alpha);

/// Convenience: build the graph for `mission` and plan every UAV from its
/// initial state.
PlanAssignment plan_mission(const Mission& mission, double alpha, const GreedyOptions& options = {});

}  // namespace cineplan
