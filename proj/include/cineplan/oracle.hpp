#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cineplan/graph.hpp"
#include "cineplan/plan.hpp"

namespace cineplan {

struct OracleBudget {
  std::size_t max_vertices = 40;
  std::size_t max_plans = 5000;  ///< terminal paths visited, before deduplication
  double max_combinations = 1e7;
};

/// Every maximal feasible plan from `start`, found by depth-first search.
/// A plan that films nothing more than the last plan emitted on its branch is
/// skipped, and plans with the same covered set are reported once.
/// Throws BudgetExceeded naming the limit that was hit.
std::vector<SingleUavPlan> enumerate_plans(const FilmingView& view, const UavState& start, const UavSpec& spec,
                                           const OracleBudget& budget = {});

double optimal_single(const FilmingView& view, const UavState& start, const UavSpec& spec,
                      const OracleBudget& budget = {});
double optimal_single(const DiscretizationGraph& graph, const UavState& start, const UavSpec& spec,
                      const OracleBudget& budget = {});

struct MultiOptimum {
  double filming_time = 0.0;
  std::vector<SingleUavPlan> plans;  ///< one per start, in input order
};

/// Best joint assignment by union filming time. Identical starts are
/// searched as multisets, otherwise as ordered tuples.
MultiOptimum optimal_multi(const FilmingView& view, std::span<const UavState> starts,
                           std::span<const UavSpec> specs, const OracleBudget& budget = {});
MultiOptimum optimal_multi(const DiscretizationGraph& graph, std::span<const UavState> starts,
                           std::span<const UavSpec> specs, const OracleBudget& budget = {});

}  // namespace cineplan
