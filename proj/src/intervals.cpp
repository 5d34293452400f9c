#include "cineplan/intervals.hpp"

#include <algorithm>

namespace cineplan {

std::vector<TimeInterval> merge_intervals(std::vector<TimeInterval> intervals) {
  std::erase_if(intervals, [](const TimeInterval& i) { return !(i.end > i.start); });
  std::sort(intervals.begin(), intervals.end(), [](const TimeInterval& a, const TimeInterval& b) {
    return a.start < b.start || (a.start == b.start && a.end < b.end);
  });
  std::vector<TimeInterval> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.start <= merged.back().end) {
      merged.back().end = std::max(merged.back().end, iv.end);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

double union_length(std::span<const TimeInterval> intervals) {
  double total = 0.0;
  for (const auto& iv : merge_intervals({intervals.begin(), intervals.end()})) total += iv.length();
  return total;
}

std::vector<TimeInterval> subtract_intervals(const TimeInterval& base,
                                             std::span<const TimeInterval> removed) {
  std::vector<TimeInterval> pieces;
  if (!(base.end > base.start)) return pieces;
  double cursor = base.start;
  for (const auto& cut : merge_intervals({removed.begin(), removed.end()})) {
    if (cut.end <= cursor) continue;
    if (cut.start >= base.end) break;
    if (cut.start > cursor) pieces.push_back({cursor, cut.start});
    cursor = std::max(cursor, cut.end);
    if (cursor >= base.end) break;
  }
  if (cursor < base.end) pieces.push_back({cursor, base.end});
  return pieces;
}

double uncovered_length(const TimeInterval& base, std::span<const TimeInterval> removed) {
  double total = 0.0;
  for (const auto& piece : subtract_intervals(base, removed)) total += piece.length();
  return total;
}

std::vector<TimeInterval> intervals_for_task(std::span<const CoveredInterval> covered,
                                             const std::string& task_id) {
  std::vector<TimeInterval> out;
  for (const auto& c : covered)
    if (c.task_id == task_id) out.push_back(c.span);
  return out;
}

}  // namespace cineplan
