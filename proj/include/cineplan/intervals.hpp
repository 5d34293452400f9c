#pragma once

#include <span>
#include <string>
#include <vector>

namespace cineplan {

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;

  double length() const { return end - start; }
  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

/// A covered piece of one task's timeline.
struct CoveredInterval {
  std::string task_id;
  TimeInterval span;

  friend bool operator==(const CoveredInterval&, const CoveredInterval&) = default;
};

/// Sorts and merges overlapping or touching intervals. Empty intervals are dropped.
std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> intervals);

/// Measure of the union; overlaps are counted once.
double union_length(std::span<const TimeInterval> intervals);

/// `base` minus the union of `removed`, as sorted disjoint pieces.
std::vector<TimeInterval> subtract_intervals(const TimeInterval& base,
                                             std::span<const TimeInterval> removed);

/// Measure of `base` minus the union of `removed`.
double uncovered_length(const TimeInterval& base, std::span<const TimeInterval> removed);

/// Intervals of `covered` belonging to `task_id`.
std::vector<TimeInterval> intervals_for_task(std::span<const CoveredInterval> covered,
                                             const std::string& task_id);

}  // namespace cineplan
