#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "cineplan/dp_solver.hpp"
#include "cineplan/errors.hpp"
#include "cineplan/experiments.hpp"
#include "cineplan/graph.hpp"
#include "cineplan/greedy.hpp"
#include "cineplan/intervals.hpp"
#include "cineplan/mission_io.hpp"
#include "cineplan/oracle.hpp"
#include "cineplan/path_planner.hpp"
#include "cineplan/report.hpp"
#include "cineplan/scenario.hpp"

namespace py = pybind11;
using namespace cineplan;

namespace {

py::tuple vec3(const Vec3& v) { return py::make_tuple(v.x, v.y, v.z); }

Vec3 to_vec3(const std::vector<double>& v) {
  if (v.size() != 3) throw py::value_error("expected a point (x, y, z)");
  return {v[0], v[1], v[2]};
}

py::dict assignment_dict(const Mission& mission, const PlanAssignment& a, double alpha, double relay_gap) {
  py::dict d;
  d["filming_time"] = a.total_filming_time;
  d["coverage_ratio"] = a.coverage_ratio;
  d["total_task_duration"] = a.total_task_duration;
  d["iteration_gains"] = a.iteration_gains;
  py::dict per_uav;
  for (const auto& p : a.plans) per_uav[py::str(p.uav_id)] = p.filming_time;
  d["uav_filming_time"] = per_uav;
  d["plan_json"] = export_plan(a, mission.tasks, alpha, relay_gap);
  d["gantt_csv"] = export_gantt(a);
  return d;
}

GenParams gen_params(double uav_speed, double battery, double sample_period, double recharge_delay, int uavs,
                     std::uint64_t seed) {
  GenParams p;
  p.uav_speed = uav_speed;
  p.battery = battery;
  p.sample_period = sample_period;
  p.recharge_delay = recharge_delay;
  p.uav_count = uavs;
  p.seed = seed;
  return p;
}

GraphOptions graph_options(const Mission& mission, double alpha) {
  GraphOptions go;
  go.alpha = alpha;
  go.uav_speed = mission.fleet_speed();
  return go;
}

}  // namespace

PYBIND11_MODULE(_cineplan, m) {
  m.doc() = "Battery-aware filming planner for camera UAV teams";

  static py::exception<Error> base_error(m, "Error", PyExc_RuntimeError);
  static py::exception<ValidationError> validation_error(m, "ValidationError", base_error.ptr());
  static py::exception<ParseError> parse_error(m, "ParseError", base_error.ptr());
  static py::exception<NoPathError> no_path_error(m, "NoPathError", base_error.ptr());
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", base_error.ptr());
  static py::exception<GenerationError> generation_error(m, "GenerationError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const NoPathError& e) {
      py::set_error(no_path_error, e.what());
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    } catch (const GenerationError& e) {
      py::set_error(generation_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<Mission>(m, "Mission")
      .def_property_readonly("task_ids",
                             [](const Mission& ms) {
                               std::vector<std::string> ids;
                               for (const auto& t : ms.tasks) ids.push_back(t.id);
                               return ids;
                             })
      .def_property_readonly("uav_ids",
                             [](const Mission& ms) {
                               std::vector<std::string> ids;
                               for (const auto& u : ms.uavs) ids.push_back(u.id);
                               return ids;
                             })
      .def_property_readonly("station_ids",
                             [](const Mission& ms) {
                               std::vector<std::string> ids;
                               for (const auto& b : ms.base_stations) ids.push_back(b.id);
                               return ids;
                             })
      .def_property_readonly("total_task_duration", &Mission::total_task_duration)
      .def("to_json", [](const Mission& ms) { return save_mission(ms); });

  m.def("load_mission", [](const std::string& content) { return load_mission(content); }, py::arg("content"),
        "Parse and validate a mission JSON string.");
  m.def("load_mission_file", [](const std::string& path) { return load_mission_file(path); }, py::arg("path"));

  m.def(
      "plan",
      [](const Mission& mission, double alpha, double relay_gap) {
        GreedyOptions options;
        options.relay_gap = relay_gap;
        return assignment_dict(mission, plan_mission(mission, alpha, options), alpha, relay_gap);
      },
      py::arg("mission"), py::arg("alpha") = 5.0, py::arg("relay_gap") = 0.0,
      "Greedy multi-UAV plan. Returns metrics plus the plan JSON and gantt CSV.");
  m.def(
      "replan",
      [](const Mission& mission, const std::string& state_json, double alpha, double relay_gap) {
        GreedyOptions options;
        options.relay_gap = relay_gap;
        const ExecutionState state = load_execution_state(state_json, mission);
        return assignment_dict(mission, replan(mission, state, alpha, options), alpha, relay_gap);
      },
      py::arg("mission"), py::arg("state_json"), py::arg("alpha") = 5.0, py::arg("relay_gap") = 0.0);
  m.def(
      "recompute_metrics",
      [](const std::string& plan_json) {
        const AssignmentMetrics metrics = recompute_metrics(import_plan(plan_json));
        return py::make_tuple(metrics.filming_time, metrics.coverage_ratio);
      },
      py::arg("plan_json"), "(filming_time, coverage_ratio) recomputed from a plan file alone.");

  m.def(
      "solve_single",
      [](const Mission& mission, const std::string& uav_id, double alpha) {
        const UavSpec* spec = mission.find_uav(uav_id);
        if (!spec) throw py::key_error(uav_id);
        const auto states = initial_states(mission);
        const auto it = std::find_if(states.begin(), states.end(),
                                     [&](const UavState& s) { return s.uav_id == uav_id; });
        const DiscretizationGraph graph = build_graph(mission, graph_options(mission, alpha));
        return solve_single(graph, *it, *spec).filming_time;
      },
      py::arg("mission"), py::arg("uav_id"), py::arg("alpha") = 5.0, "Best single-UAV filming time.");
  m.def(
      "optimal_single",
      [](const Mission& mission, const std::string& uav_id, double alpha, std::size_t max_vertices) {
        const UavSpec* spec = mission.find_uav(uav_id);
        if (!spec) throw py::key_error(uav_id);
        const auto states = initial_states(mission);
        const auto it = std::find_if(states.begin(), states.end(),
                                     [&](const UavState& s) { return s.uav_id == uav_id; });
        const DiscretizationGraph graph = build_graph(mission, graph_options(mission, alpha));
        OracleBudget budget;
        budget.max_vertices = max_vertices;
        return optimal_single(graph, *it, *spec, budget);
      },
      py::arg("mission"), py::arg("uav_id"), py::arg("alpha") = 5.0, py::arg("max_vertices") = 40,
      "Exhaustive single-UAV optimum.");
  m.def(
      "optimal_multi",
      [](const Mission& mission, double alpha, std::size_t max_vertices) {
        const DiscretizationGraph graph = build_graph(mission, graph_options(mission, alpha));
        OracleBudget budget;
        budget.max_vertices = max_vertices;
        return optimal_multi(graph, initial_states(mission), mission.uavs, budget).filming_time;
      },
      py::arg("mission"), py::arg("alpha") = 5.0, py::arg("max_vertices") = 40,
      "Exhaustive optimum of the union filming time over the whole fleet.");

  m.def(
      "graph_stats",
      [](const Mission& mission, double alpha) {
        const DiscretizationGraph graph = build_graph(mission, graph_options(mission, alpha));
        py::dict d;
        d["vertices"] = graph.vertex_count();
        d["edges"] = graph.edge_count();
        std::vector<std::string> warnings;
        for (const auto& w : graph.warnings()) warnings.push_back(w.task_id + ": " + w.message);
        d["warnings"] = warnings;
        return d;
      },
      py::arg("mission"), py::arg("alpha") = 5.0);
  m.def(
      "dump_graph",
      [](const Mission& mission, double alpha) {
        return dump_graph(build_graph(mission, graph_options(mission, alpha)));
      },
      py::arg("mission"), py::arg("alpha") = 5.0);

  m.def(
      "plan_path",
      [](const std::vector<double>& from, const std::vector<double>& to, double speed) {
        const PathEstimate e = plan_path(to_vec3(from), to_vec3(to), nullptr, speed);
        py::list pts;
        for (const auto& w : e.waypoints) pts.append(vec3(w));
        py::dict d;
        d["waypoints"] = pts;
        d["length"] = e.length;
        d["travel_time"] = e.travel_time;
        d["battery_cost"] = e.battery_cost;
        return d;
      },
      py::arg("start"), py::arg("goal"), py::arg("speed"), "Straight-line path estimate without a map.");
  m.def(
      "plan_path_on_map",
      [](const Mission& mission, const std::vector<double>& from, const std::vector<double>& to, double speed) {
        if (!mission.map) throw py::value_error("mission has no map");
        const GridMap map = GridMap::from_spec(*mission.map);
        const PathEstimate e = plan_path(to_vec3(from), to_vec3(to), &map, speed);
        py::list pts;
        for (const auto& w : e.waypoints) pts.append(vec3(w));
        py::dict d;
        d["waypoints"] = pts;
        d["length"] = e.length;
        d["travel_time"] = e.travel_time;
        d["battery_cost"] = e.battery_cost;
        return d;
      },
      py::arg("mission"), py::arg("start"), py::arg("goal"), py::arg("speed"),
      "Path estimate around the mission's no-fly zones.");

  m.def(
      "union_length",
      [](const std::vector<std::pair<double, double>>& spans) {
        std::vector<TimeInterval> intervals;
        for (const auto& [a, b] : spans) intervals.push_back({a, b});
        return union_length(intervals);
      },
      py::arg("intervals"), "Total length of the union of (start, end) pairs.");

  m.def(
      "generate_longitudinal",
      [](int n, int x, std::uint64_t seed, int uavs, double uav_speed, double battery, double sample_period,
         double recharge_delay) {
        return gen_longitudinal(n, x, gen_params(uav_speed, battery, sample_period, recharge_delay, uavs, seed));
      },
      py::arg("n"), py::arg("x"), py::arg("seed") = 1, py::arg("uavs") = 1, py::arg("uav_speed") = 3.0,
      py::arg("battery") = 900.0, py::arg("sample_period") = 5.0, py::arg("recharge_delay") = 0.0);
  m.def(
      "generate_shot_mix",
      [](int n, int max_active, std::uint64_t seed, int uavs, double uav_speed, double battery,
         double sample_period, double recharge_delay) {
        return gen_shot_mix(n, max_active,
                            gen_params(uav_speed, battery, sample_period, recharge_delay, uavs, seed));
      },
      py::arg("n"), py::arg("max_active"), py::arg("seed") = 1, py::arg("uavs") = 1, py::arg("uav_speed") = 3.0,
      py::arg("battery") = 900.0, py::arg("sample_period") = 5.0, py::arg("recharge_delay") = 0.0);

  m.def(
      "experiment_coverage",
      [](int n, int x, int repetitions, int k_max, std::uint64_t seed, double alpha) {
        CoverageConfig config;
        config.n = n;
        config.x = x;
        config.repetitions = repetitions;
        config.k_max = k_max;
        config.seed = seed;
        config.alpha = alpha;
        py::gil_scoped_release release;
        return coverage_csv(run_coverage_experiment(config));
      },
      py::arg("n") = 20, py::arg("x") = 4, py::arg("repetitions") = 20, py::arg("k_max") = 8, py::arg("seed") = 1,
      py::arg("alpha") = 5.0, "Coverage-vs-fleet-size CSV.");
  m.def(
      "experiment_optimal",
      [](int n_min, int n_max, int repetitions, std::uint64_t seed, double alpha, int k, int max_active,
         std::size_t oracle_max_vertices) {
        OptimalConfig config;
        config.n_min = n_min;
        config.n_max = n_max;
        config.repetitions = repetitions;
        config.seed = seed;
        config.alpha = alpha;
        config.params.sample_period = alpha;
        config.k = k;
        config.max_active = max_active;
        config.budget.max_vertices = oracle_max_vertices;
        py::gil_scoped_release release;
        return optimal_csv(run_optimal_experiment(config));
      },
      py::arg("n_min") = 1, py::arg("n_max") = 6, py::arg("repetitions") = 10, py::arg("seed") = 1,
      py::arg("alpha") = 30.0, py::arg("k") = 3, py::arg("max_active") = 3, py::arg("oracle_max_vertices") = 60,
      "Greedy-vs-optimal CSV.");
  m.def("experiment_schema", &experiment_schema);
}
