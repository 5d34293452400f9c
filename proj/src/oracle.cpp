#include "cineplan/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>

#include "cineplan/dp_solver.hpp"
#include "cineplan/errors.hpp"
#include "cineplan/greedy.hpp"

namespace cineplan {

namespace {

using CoverKey = std::vector<std::tuple<std::string, double, double>>;

CoverKey cover_key(const SingleUavPlan& p) {
  CoverKey key;
  for (const auto& c : p.covered) key.emplace_back(c.task_id, c.span.start, c.span.end);
  std::sort(key.begin(), key.end());
  return key;
}

class Enumerator {
 public:
  Enumerator(const FilmingView& view, const UavState& start, const UavSpec& spec, const OracleBudget& budget)
      : view_(view), g_(view.graph()), start_(start), b_(spec.battery_endurance), budget_(budget) {}

  std::vector<SingleUavPlan> run() {
    if (g_.vertex_count() > budget_.max_vertices)
      throw BudgetExceeded("max_vertices", "graph has " + std::to_string(g_.vertex_count()) +
                                               " vertices, oracle limit is " + std::to_string(budget_.max_vertices));
    emit_plan(make_empty_plan(g_, start_));
    const bool docked = dock().has_value();
    if (docked) {
      const int s = *dock();
      const auto chain = g_.station_vertices(s);
      const BaseStation& st = g_.stations()[static_cast<std::size_t>(s)];
      for (int v : chain) {
        if (g_.vertices()[static_cast<std::size_t>(v)].time() + kTimeEps < start_.clock) continue;
        const double ready = start_.clock + (start_.battery_remaining + kTimeEps < b_ ? st.recharge_delay : 0.0);
        path_ = {{v, -1}};
        walk(v, b_, ready, 0.0, 0.0, s, 0.0);
        break;
      }
      return std::move(plans_);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const Vertex& v : g_.vertices()) {
      const double elapsed = v.time() - start_.clock;
      if (elapsed < -kTimeEps) continue;
      const auto fly = g_.planner().try_travel_time(start_.position, v.waypoint.position, g_.uav_speed());
      if (!fly || *fly > elapsed + kTimeEps) continue;
      const double drain = elapsed > 0.0 ? elapsed : 0.0;
      path_ = {{v.id, -1}};
      if (v.is_base()) {
        if (start_.battery_remaining + kTimeEps < drain) continue;
        terminal(0.0, nan);
        walk(v.id, b_, v.time() + g_.stations()[static_cast<std::size_t>(v.station)].recharge_delay, 0.0, 0.0, -1,
             0.0);
      } else {
        if (start_.battery_remaining + kTimeEps < drain + g_.return_time(v.id)) continue;
        walk(v.id, start_.battery_remaining - drain, -std::numeric_limits<double>::infinity(), 0.0, nan, -1, 0.0);
      }
    }
    return std::move(plans_);
  }

 private:
  std::optional<int> dock() const {
    for (std::size_t s = 0; s < g_.stations().size(); ++s)
      if (distance(g_.stations()[s].position_at(start_.clock), start_.position) <= 1e-3) return static_cast<int>(s);
    return std::nullopt;
  }

  // Returns true when the plan was emitted.
  bool terminal(double ft, double last_emitted) {
    if (++terminals_ > budget_.max_plans)
      throw BudgetExceeded("max_plans", "more than " + std::to_string(budget_.max_plans) + " terminal paths");
    if (ft == last_emitted) return false;
    emit_plan(plan_from_steps(view_, start_, path_));
    return true;
  }

  void emit_plan(SingleUavPlan plan) {
    if (seen_.insert(cover_key(plan)).second) plans_.push_back(std::move(plan));
  }

  void walk(int v, double battery, double ready, double ft, double last_emitted, int sortie_station,
            double sortie_ft) {
    const Vertex& here = g_.vertices()[static_cast<std::size_t>(v)];
    for (int e : g_.out_edges(v)) {
      const Edge& edge = g_.edges()[static_cast<std::size_t>(e)];
      const Vertex& there = g_.vertices()[static_cast<std::size_t>(edge.to)];
      double nb = battery, nr = ready, nft = ft;
      int n_station = sortie_station;
      double n_sortie_ft = sortie_ft;
      if (edge.kind != EdgeKind::Dwell) {
        if (here.is_base()) {
          if (here.time() < ready - kTimeEps) continue;
          n_station = here.station;
          n_sortie_ft = ft;
        }
        const double need = edge.battery_cost + (there.is_base() ? 0.0 : g_.return_time(edge.to));
        if (battery + kTimeEps < need) continue;
        nft = ft + view_.value(e);
        if (there.is_base()) {
          if (edge.kind == EdgeKind::Arrive && there.station == sortie_station && nft == sortie_ft &&
              here.is_base() == false && sortie_station >= 0)
            continue;
          nb = b_;
          nr = there.time() + g_.stations()[static_cast<std::size_t>(there.station)].recharge_delay;
        } else {
          nb = battery - edge.battery_cost;
          nr = -std::numeric_limits<double>::infinity();
        }
      }
      path_.push_back({edge.to, e});
      double last = last_emitted;
      if (there.is_base() && edge.kind != EdgeKind::Dwell) {
        if (terminal(nft, last_emitted)) last = nft;
      }
      walk(edge.to, nb, nr, nft, last, n_station, n_sortie_ft);
      path_.pop_back();
    }
  }

  const FilmingView& view_;
  const DiscretizationGraph& g_;
  UavState start_;
  double b_;
  OracleBudget budget_;
  std::vector<PlanStep> path_;
  std::vector<SingleUavPlan> plans_;
  std::set<CoverKey> seen_;
  std::size_t terminals_ = 0;
};

bool same_start(const UavState& a, const UavSpec& sa, const UavState& b, const UavSpec& sb) {
  return a.position == b.position && a.clock == b.clock && a.battery_remaining == b.battery_remaining &&
         sa.battery_endurance == sb.battery_endurance && sa.cruise_speed == sb.cruise_speed;
}

// Task timelines cut at every covered-interval endpoint; plans become bitsets
// over the resulting atoms so unions are bitwise ORs.
struct AtomIndex {
  std::vector<double> lengths;
  std::vector<std::vector<std::uint64_t>> bits;  // per plan

  std::size_t words() const { return (lengths.size() + 63) / 64; }
};

AtomIndex build_atoms(const std::vector<const SingleUavPlan*>& plans) {
  std::map<std::string, std::vector<double>> cuts;
  for (const auto* p : plans)
    for (const auto& c : p->covered) {
      cuts[c.task_id].push_back(c.span.start);
      cuts[c.task_id].push_back(c.span.end);
    }
  AtomIndex idx;
  std::map<std::string, std::size_t> base;
  for (auto& [task, pts] : cuts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    base[task] = idx.lengths.size();
    for (std::size_t i = 1; i < pts.size(); ++i) idx.lengths.push_back(pts[i] - pts[i - 1]);
  }
  const std::size_t words = idx.words();
  for (const auto* p : plans) {
    std::vector<std::uint64_t> set(words, 0);
    for (const auto& c : p->covered) {
      const auto& pts = cuts[c.task_id];
      const auto first = std::lower_bound(pts.begin(), pts.end(), c.span.start) - pts.begin();
      const auto last = std::lower_bound(pts.begin(), pts.end(), c.span.end) - pts.begin();
      for (auto a = first; a < last; ++a) {
        const std::size_t atom = base[c.task_id] + static_cast<std::size_t>(a);
        set[atom / 64] |= std::uint64_t{1} << (atom % 64);
      }
    }
    idx.bits.push_back(std::move(set));
  }
  return idx;
}

double bits_value(const AtomIndex& idx, const std::vector<std::uint64_t>& set) {
  double total = 0.0;
  for (std::size_t a = 0; a < idx.lengths.size(); ++a)
    if (set[a / 64] >> (a % 64) & 1u) total += idx.lengths[a];
  return total;
}

double binomial(double n, double k) {
  double r = 1.0;
  for (int i = 1; i <= static_cast<int>(k); ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<SingleUavPlan> enumerate_plans(const FilmingView& view, const UavState& start, const UavSpec& spec,
                                           const OracleBudget& budget) {
  return Enumerator(view, start, spec, budget).run();
}

double optimal_single(const FilmingView& view, const UavState& start, const UavSpec& spec,
                      const OracleBudget& budget) {
  double best = 0.0;
  for (const auto& p : enumerate_plans(view, start, spec, budget)) best = std::max(best, p.filming_time);
  return best;
}

double optimal_single(const DiscretizationGraph& graph, const UavState& start, const UavSpec& spec,
                      const OracleBudget& budget) {
  return optimal_single(FilmingView(graph), start, spec, budget);
}

MultiOptimum optimal_multi(const FilmingView& view, std::span<const UavState> starts,
                           std::span<const UavSpec> specs, const OracleBudget& budget) {
  if (starts.size() != specs.size()) throw std::invalid_argument("starts and specs differ in length");
  MultiOptimum out;
  const std::size_t k = starts.size();
  if (k == 0) return out;

  bool identical = true;
  for (std::size_t i = 1; i < k; ++i) identical = identical && same_start(starts[0], specs[0], starts[i], specs[i]);

  // Candidate lists per slot, sorted by filming time (descending) for the bound.
  std::vector<std::vector<SingleUavPlan>> lists;
  for (std::size_t i = 0; i < (identical ? 1 : k); ++i) {
    auto plans = enumerate_plans(view, starts[i], specs[i], budget);
    std::stable_sort(plans.begin(), plans.end(),
                     [](const auto& a, const auto& b) { return a.filming_time > b.filming_time; });
    lists.push_back(std::move(plans));
  }
  double combos = 1.0;
  if (identical)
    combos = binomial(static_cast<double>(lists[0].size() + k - 1), static_cast<double>(k));
  else
    for (const auto& l : lists) combos *= static_cast<double>(l.size());
  if (combos > budget.max_combinations)
    throw BudgetExceeded("max_combinations", "joint search needs " + std::to_string(combos) + " combinations");

  std::vector<const SingleUavPlan*> all;
  std::vector<std::size_t> offset;
  for (const auto& l : lists) {
    offset.push_back(all.size());
    for (const auto& p : l) all.push_back(&p);
  }
  const AtomIndex atoms = build_atoms(all);
  auto slot_list = [&](std::size_t slot) { return identical ? 0 : slot; };

  std::vector<double> slot_max(k, 0.0);
  for (std::size_t s = 0; s < k; ++s) {
    const auto& l = lists[slot_list(s)];
    slot_max[s] = l.empty() ? 0.0 : l.front().filming_time;
  }
  std::vector<double> tail_max(k + 1, 0.0);
  for (std::size_t s = k; s-- > 0;) tail_max[s] = tail_max[s + 1] + slot_max[s];

  double best = -1.0;
  std::vector<std::size_t> choice(k, 0), best_choice(k, 0);
  std::vector<std::vector<std::uint64_t>> acc(k + 1, std::vector<std::uint64_t>(atoms.words(), 0));
  std::vector<double> acc_value(k + 1, 0.0);

  auto search = [&](auto&& self, std::size_t slot, std::size_t from) -> void {
    if (slot == k) {
      if (acc_value[k] > best) {
        best = acc_value[k];
        best_choice = choice;
      }
      return;
    }
    const auto& l = lists[slot_list(slot)];
    for (std::size_t i = identical ? from : 0; i < l.size(); ++i) {
      const double bound = identical ? acc_value[slot] + static_cast<double>(k - slot) * l[i].filming_time
                                     : acc_value[slot] + l[i].filming_time + tail_max[slot + 1];
      if (bound <= best) break;
      const auto& bits = atoms.bits[offset[slot_list(slot)] + i];
      for (std::size_t w = 0; w < bits.size(); ++w) acc[slot + 1][w] = acc[slot][w] | bits[w];
      acc_value[slot + 1] = bits_value(atoms, acc[slot + 1]);
      choice[slot] = i;
      self(self, slot + 1, i);
    }
  };
  search(search, 0, 0);

  for (std::size_t s = 0; s < k; ++s) {
    const auto& l = lists[slot_list(s)];
    SingleUavPlan p = l.empty() ? make_empty_plan(view.graph(), starts[s]) : l[best_choice[s]];
    p.uav_id = starts[s].uav_id;
    p.start = starts[s];
    out.plans.push_back(std::move(p));
  }
  out.filming_time = compute_assignment_metrics(out.plans, view.graph().tasks()).filming_time;
  return out;
}

MultiOptimum optimal_multi(const DiscretizationGraph& graph, std::span<const UavState> starts,
                           std::span<const UavSpec> specs, const OracleBudget& budget) {
  return optimal_multi(FilmingView(graph), starts, specs, budget);
}

}  // namespace cineplan
