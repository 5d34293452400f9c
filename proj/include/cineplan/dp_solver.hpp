#pragma once

#include <optional>
#include <span>
#include <vector>

#include "cineplan/graph.hpp"
#include "cineplan/plan.hpp"

namespace cineplan {

/// DP state at one vertex. `ready_time` is when a docked UAV may leave its
/// station again; it is -inf away from stations.
struct Label {
  double filming_time = 0.0;
  double battery = 0.0;
  double ready_time = 0.0;
  int pred_vertex = -1;
  int pred_label = -1;
  int pred_edge = -1;
};

/// a dominates b when it has at least the filming time and battery of b and
/// is ready no later.
bool dominates(const Label& a, const Label& b);

/// Pareto frontier of labels at one vertex. Insertion keeps the first of two
/// equal labels.
class LabelSet {
 public:
  /// Returns false if `label` is dominated; otherwise stores it and evicts
  /// the labels it dominates.
  bool insert(const Label& label);
  std::span<const Label> labels() const { return labels_; }
  const Label& operator[](std::size_t i) const { return labels_[i]; }
  std::size_t size() const { return labels_.size(); }

 private:
  std::vector<Label> labels_;
};

struct LabelTable {
  std::vector<LabelSet> sets;  ///< indexed by vertex id
  std::size_t generated = 0;   ///< labels offered to insert()
};

/// Station index whose position at `state.clock` is within 1 mm of the UAV.
std::optional<int> docked_station(const DiscretizationGraph& graph, const UavState& state);

/// Label sweep in topological order from `start`.
LabelTable solve_labels(const FilmingView& view, const UavState& start, const UavSpec& spec);

/// Plan for the path ending at label `label` of `vertex`. Trailing dwell
/// steps are dropped. Throws std::logic_error on a broken predecessor chain.
SingleUavPlan reconstruct(const FilmingView& view, const LabelTable& table, const UavState& start,
                          int vertex, int label);

/// Plan that follows `steps` through the graph. Filming and covered
/// intervals are taken from `view`.
SingleUavPlan plan_from_steps(const FilmingView& view, const UavState& start, std::vector<PlanStep> steps);

/// The do-nothing plan: stay docked, or fly to the nearest station when airborne.
SingleUavPlan make_empty_plan(const DiscretizationGraph& graph, const UavState& start);

/// Maximum-filming plan for one UAV. Ties prefer higher final battery, then
/// the earlier terminal vertex, then the lower vertex id.
SingleUavPlan solve_single(const FilmingView& view, const UavState& start, const UavSpec& spec);
SingleUavPlan solve_single(const DiscretizationGraph& graph, const UavState& start, const UavSpec& spec);

}  // namespace cineplan
