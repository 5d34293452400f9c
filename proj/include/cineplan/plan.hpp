#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cineplan/intervals.hpp"
#include "cineplan/mission.hpp"

namespace cineplan {

enum class SegmentKind { Navigate, Film, Recharge, Dwell };

std::string_view to_string(SegmentKind kind);
std::optional<SegmentKind> parse_segment_kind(std::string_view name);

struct PlanSegment {
  SegmentKind kind = SegmentKind::Navigate;
  Waypoint from;
  Waypoint to;
  std::string task_id;  ///< film segments only

  double t_start() const { return from.time; }
  double t_end() const { return to.time; }
  friend bool operator==(const PlanSegment&, const PlanSegment&) = default;
};

/// One hop of a graph path. The first step has `edge == -1` and names the
/// vertex the UAV joins the graph at.
struct PlanStep {
  int vertex = -1;
  int edge = -1;
  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

struct SingleUavPlan {
  std::string uav_id;
  UavState start;
  std::vector<PlanStep> steps;
  std::vector<PlanSegment> segments;
  double filming_time = 0.0;
  std::vector<CoveredInterval> covered;

  bool empty() const { return covered.empty(); }
};

}  // namespace cineplan
