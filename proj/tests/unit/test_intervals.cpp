#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "cineplan/intervals.hpp"
#include "cineplan/scenario.hpp"

using namespace cineplan;

namespace {

// Event sweep: +1 at starts, -1 at ends, accumulate length where the count is positive.
double sweep_union(const std::vector<TimeInterval>& xs) {
  std::map<double, int> events;
  for (const auto& x : xs)
    if (x.end > x.start) {
      events[x.start] += 1;
      events[x.end] -= 1;
    }
  double total = 0.0;
  int depth = 0;
  double last = 0.0;
  for (const auto& [t, d] : events) {
    if (depth > 0) total += t - last;
    depth += d;
    last = t;
  }
  return total;
}

std::vector<TimeInterval> random_intervals(Rng& rng, int count) {
  std::vector<TimeInterval> xs;
  for (int i = 0; i < count; ++i) {
    const double a = std::round(rng.uniform(0.0, 100.0));
    xs.push_back({a, a + std::round(rng.uniform(0.0, 20.0))});
  }
  return xs;
}

}  // namespace

TEST(Intervals, MergeJoinsOverlappingAndTouching) {
  const auto merged = merge_intervals({{5, 7}, {0, 2}, {2, 3}, {6, 9}, {4, 4}});
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[0], (TimeInterval{0, 3}));
  EXPECT_EQ(merged[1], (TimeInterval{5, 9}));
}

TEST(Intervals, UnionLengthCountsOverlapOnce) {
  const std::vector<TimeInterval> xs{{0, 10}, {5, 15}, {20, 25}};
  EXPECT_DOUBLE_EQ(union_length(xs), 20.0);
  EXPECT_DOUBLE_EQ(union_length(std::vector<TimeInterval>{}), 0.0);
}

TEST(Intervals, UnionMatchesEventSweep) {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const auto xs = random_intervals(rng, 1 + static_cast<int>(rng.index(12)));
    EXPECT_DOUBLE_EQ(union_length(xs), sweep_union(xs)) << "trial " << trial;
  }
}

TEST(Intervals, SubtractMatchesUnionDifference) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const TimeInterval base{10.0, 90.0};
    const auto removed = random_intervals(rng, static_cast<int>(rng.index(8)));
    const auto pieces = subtract_intervals(base, removed);
    // |base \ R| = |base| - |base ∩ R|, and base ∩ R = union of clipped pieces.
    std::vector<TimeInterval> clipped;
    for (const auto& r : removed) clipped.push_back({std::max(r.start, base.start), std::min(r.end, base.end)});
    const double expected = base.length() - sweep_union(clipped);
    double total = 0.0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      total += pieces[i].length();
      EXPECT_GE(pieces[i].start, base.start);
      EXPECT_LE(pieces[i].end, base.end);
      if (i > 0) EXPECT_GT(pieces[i].start, pieces[i - 1].end);
    }
    EXPECT_NEAR(total, expected, 1e-9);
    EXPECT_NEAR(uncovered_length(base, removed), expected, 1e-9);
  }
}

TEST(Intervals, IntervalsForTaskFiltersById) {
  const std::vector<CoveredInterval> covered{{"a", {0, 1}}, {"b", {2, 3}}, {"a", {4, 5}}};
  const auto a = intervals_for_task(covered, "a");
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[1], (TimeInterval{4, 5}));
  EXPECT_TRUE(intervals_for_task(covered, "c").empty());
}
