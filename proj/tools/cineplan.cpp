#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cineplan/errors.hpp"
#include "cineplan/experiments.hpp"
#include "cineplan/graph.hpp"
#include "cineplan/greedy.hpp"
#include "cineplan/mission_io.hpp"
#include "cineplan/report.hpp"
#include "cineplan/scenario.hpp"

using namespace cineplan;

namespace {

struct Globals {
  double alpha = 5.0;
  std::uint64_t seed = 1;
  std::string out;
  bool quiet = false;
  bool schema = false;
  CLI::Option* alpha_opt = nullptr;
};

struct PlanArgs {
  std::string mission;
  std::string state;
  std::string map;
  std::string gantt;
  double relay_gap = 0.0;
};

struct GenerateArgs {
  std::string kind = "longitudinal";
  int n = 20;
  int x = 4;
  int uavs = 1;
  std::vector<std::string> types;
  GenParams params;
};

struct CoverageArgs {
  int n = 20;
  int x = 4;
  int repetitions = 20;
  int k_max = 8;
  int workers = 0;
};

struct OptimalArgs {
  int n_min = 1;
  int n_max = 6;
  int repetitions = 10;
  int k = 3;
  int max_active = 3;
  int workers = 0;
  int timing_repeats = 5;
  std::size_t oracle_max_vertices = 60;
  std::size_t oracle_max_plans = 5000;
  double oracle_max_combinations = 1e7;
};

constexpr const char* kFileSchema = R"(plan JSON (plan, replan)
  alpha, relay_gap, total_filming_time, coverage_ratio, total_task_duration
  tasks[]            {id, start, end}
  iteration_gains[]  filming time added by each greedy round
  replanned_from     {clock, previously_covered[] {task_id, start, end}}  (replan only)
  plans[]            {uav_id, start{x,y,z,clock,battery}, filming_time, segments[], covered[]}
  segments[]         {kind: navigate|film|recharge|dwell, t_start, t_end, from{x,y,z}, to{x,y,z}, task_id?}

gantt CSV (--gantt)
  uav_id, kind, t_start, t_end, task_id

execution state JSON (replan input)
  clock, uavs[] {id, x, y, z, battery}, covered[] {task_id, start, end}

)";

void emit(const Globals& g, const std::string& content) {
  if (g.out.empty())
    std::cout << content;
  else
    write_text_file(g.out, content);
}

void note(const Globals& g, const std::string& text) {
  if (!g.quiet) std::cerr << text;
}

Mission load_with_map(const PlanArgs& a) {
  Mission mission = load_mission_file(a.mission);
  if (!a.map.empty()) {
    mission.map = load_map(read_text_file(a.map));
    validate_mission(mission);
  }
  return mission;
}

template <class Fn>
double median_ms(Fn&& fn) {
  std::vector<double> samples;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    samples.push_back(
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[2];
}

void print_warnings(const Globals& g, const DiscretizationGraph& graph) {
  for (const auto& w : graph.warnings())
    note(g, "warning: " + (w.task_id.empty() ? std::string() : w.task_id + ": ") + w.message + "\n");
}

void write_outputs(const Globals& g, const PlanArgs& a, const Mission& mission, const PlanAssignment& result,
                   double ms) {
  emit(g, export_plan(result, mission.tasks, g.alpha, a.relay_gap));
  if (!a.gantt.empty()) write_text_file(a.gantt, export_gantt(result));
  if (!g.quiet) std::cerr << summary_table(result, ms);
}

int run_validate(const Globals& g, const PlanArgs& a) {
  const Mission mission = load_with_map(a);
  const DiscretizationGraph graph = build_graph(mission, g.alpha, mission.fleet_speed());
  print_warnings(g, graph);
  char buf[200];
  std::snprintf(buf, sizeof buf, "ok: %zu tasks, %zu base stations, %zu UAVs, %zu vertices at alpha %g\n",
                mission.tasks.size(), mission.base_stations.size(), mission.uavs.size(), graph.vertex_count(),
                g.alpha);
  if (!g.quiet) std::cout << buf;
  return 0;
}

int run_plan(const Globals& g, const PlanArgs& a) {
  const Mission mission = load_with_map(a);
  GreedyOptions options;
  options.relay_gap = a.relay_gap;
  GraphOptions go;
  go.alpha = g.alpha;
  go.uav_speed = mission.fleet_speed();
  const DiscretizationGraph graph = build_graph(mission, go);
  print_warnings(g, graph);
  const std::vector<UavState> states = initial_states(mission);
  PlanAssignment result;
  const double ms = median_ms([&] { result = solve_multi(mission, graph, states, options); });
  write_outputs(g, a, mission, result, ms);
  return 0;
}

int run_replan(const Globals& g, const PlanArgs& a) {
  const Mission mission = load_with_map(a);
  const ExecutionState state = load_execution_state(read_text_file(a.state), mission);
  GreedyOptions options;
  options.relay_gap = a.relay_gap;
  PlanAssignment result;
  const double ms = median_ms([&] { result = replan(mission, state, g.alpha, options); });
  write_outputs(g, a, mission, result, ms);
  return 0;
}

int run_generate(const Globals& g, const GenerateArgs& a) {
  GenParams params = a.params;
  params.seed = g.seed;
  params.uav_count = a.uavs;
  Mission mission;
  if (a.kind == "longitudinal") {
    mission = gen_longitudinal(a.n, a.x, params);
  } else {
    std::vector<ShotType> forced;
    for (const auto& name : a.types) {
      std::string canonical = name;
      std::transform(canonical.begin(), canonical.end(), canonical.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      if (!canonical.empty()) canonical[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(canonical[0])));
      const auto t = parse_shot_type(canonical);
      if (!t) throw ValidationError("--type", "unknown shot type '" + name + "'");
      forced.push_back(*t);
    }
    mission = gen_shot_mix(a.n, a.x, params, forced);
  }
  emit(g, save_mission(mission));
  if (!g.out.empty()) {
    nlohmann::ordered_json manifest;
    manifest["generator"] = a.kind;
    manifest["seed"] = params.seed;
    manifest["n"] = a.n;
    manifest[a.kind == "longitudinal" ? "x" : "max_active"] = a.x;
    if (!a.types.empty()) manifest["types"] = a.types;
    manifest["params"] = {{"target_speed_min", params.target_speed_min},
                          {"target_speed_max", params.target_speed_max},
                          {"uav_speed", params.uav_speed},
                          {"battery", params.battery},
                          {"shot_length_max", params.shot_length_max},
                          {"shot_duration_min", params.shot_duration_min},
                          {"shot_duration_max", params.shot_duration_max},
                          {"route_length", params.route_length},
                          {"sample_period", params.sample_period},
                          {"recharge_delay", params.recharge_delay},
                          {"uav_count", params.uav_count}};
    write_text_file(g.out + ".manifest.json", manifest.dump(2) + "\n");
  }
  note(g, "generated " + std::to_string(mission.tasks.size()) + " tasks\n");
  return 0;
}

int run_coverage(const Globals& g, const CoverageArgs& a, const GenParams& params) {
  CoverageConfig config;
  config.n = a.n;
  config.x = a.x;
  config.repetitions = a.repetitions;
  config.k_max = a.k_max;
  config.seed = g.seed;
  config.alpha = g.alpha;
  config.params = params;
  config.workers = a.workers;
  const CoverageResult result = run_coverage_experiment(config);
  emit(g, coverage_csv(result));
  if (!g.quiet) {
    std::fprintf(stderr, "%4s %10s\n", "k", "mean_cr");
    for (std::size_t k = 0; k < result.mean_cr.size(); ++k)
      std::fprintf(stderr, "%4zu %10.4f\n", k + 1, result.mean_cr[k]);
  }
  return 0;
}

int run_optimal(const Globals& g, const OptimalArgs& a, const GenParams& params) {
  OptimalConfig config;
  config.n_min = a.n_min;
  config.n_max = a.n_max;
  config.repetitions = a.repetitions;
  config.seed = g.seed;
  config.alpha = g.alpha_opt->count() > 0 ? g.alpha : 30.0;
  config.k = a.k;
  config.max_active = a.max_active;
  config.budget = {a.oracle_max_vertices, a.oracle_max_plans, a.oracle_max_combinations};
  config.timing_repeats = a.timing_repeats;
  config.params = params;
  config.params.sample_period = config.alpha;
  config.workers = a.workers;
  const OptimalResult result = run_optimal_experiment(config);
  emit(g, optimal_csv(result));
  if (!g.quiet) {
    std::fprintf(stderr, "%4s %6s %10s %10s %8s %10s %10s\n", "n", "ok", "greedy_cr", "optimal_cr", "ratio",
                 "greedy_ms", "oracle_ms");
    for (const auto& grp : result.groups)
      std::fprintf(stderr, "%4d %3d/%-2d %10.4f %10.4f %8.4f %10.3f %10.3f\n", grp.n, grp.instances,
                   grp.instances + grp.skipped, grp.mean_greedy_cr, grp.mean_optimal_cr, grp.mean_ratio,
                   grp.mean_greedy_ms, grp.mean_oracle_ms);
  }
  return 0;
}

int run_graph_dump(const Globals& g, const PlanArgs& a) {
  const Mission mission = load_with_map(a);
  GraphOptions go;
  go.alpha = g.alpha;
  go.uav_speed = mission.fleet_speed();
  const DiscretizationGraph graph = build_graph(mission, go);
  print_warnings(g, graph);
  emit(g, dump_graph(graph));
  return 0;
}

void add_gen_params(CLI::App* app, GenParams& p) {
  app->add_option("--target-speed-min", p.target_speed_min, "Minimum target speed (m/s)")->capture_default_str();
  app->add_option("--target-speed-max", p.target_speed_max, "Maximum target speed (m/s)")->capture_default_str();
  app->add_option("--uav-speed", p.uav_speed, "UAV cruise speed (m/s)")->capture_default_str();
  app->add_option("--battery", p.battery, "Battery endurance (s)")->capture_default_str();
  app->add_option("--shot-length-max", p.shot_length_max, "Maximum shot path length (m)")->capture_default_str();
  app->add_option("--shot-duration-min", p.shot_duration_min, "Minimum shot duration (s)")->capture_default_str();
  app->add_option("--shot-duration-max", p.shot_duration_max, "Maximum shot duration (s)")->capture_default_str();
  app->add_option("--route-length", p.route_length, "Route length (m), 0 for automatic")->capture_default_str();
  app->add_option("--recharge-delay", p.recharge_delay, "Base station recharge delay (s)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Battery-aware filming planner for camera UAV teams"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Globals g;
  g.alpha_opt = app.add_option("--alpha", g.alpha, "Discretization step in seconds")
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--out", g.out, "Output file (stdout when omitted)");
  app.add_flag("--quiet", g.quiet, "Suppress summaries and warnings");
  app.add_flag("--schema", g.schema, "Print the output file and CSV column documentation");

  PlanArgs pa;
  auto* validate = app.add_subcommand("validate", "Check a mission file");
  validate->add_option("mission", pa.mission, "Mission JSON")->required()->check(CLI::ExistingFile);
  validate->add_option("--map", pa.map, "Map JSON overriding the mission map")->check(CLI::ExistingFile);

  auto* plan = app.add_subcommand("plan", "Plan every UAV of a mission");
  plan->add_option("mission", pa.mission, "Mission JSON")->required()->check(CLI::ExistingFile);
  plan->add_option("--relay-gap", pa.relay_gap, "Handover gap between UAVs on one task (s)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  plan->add_option("--map", pa.map, "Map JSON overriding the mission map")->check(CLI::ExistingFile);
  plan->add_option("--gantt", pa.gantt, "Also write a gantt CSV");

  auto* rp = app.add_subcommand("replan", "Re-plan from a mid-mission execution state");
  rp->add_option("mission", pa.mission, "Mission JSON")->required()->check(CLI::ExistingFile);
  rp->add_option("state", pa.state, "Execution state JSON")->required()->check(CLI::ExistingFile);
  rp->add_option("--relay-gap", pa.relay_gap, "Handover gap between UAVs on one task (s)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  rp->add_option("--map", pa.map, "Map JSON overriding the mission map")->check(CLI::ExistingFile);
  rp->add_option("--gantt", pa.gantt, "Also write a gantt CSV");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Generate a random mission");
  generate->add_option("kind", ga.kind, "longitudinal or shot-mix")
      ->capture_default_str()
      ->check(CLI::IsMember({"longitudinal", "shot-mix"}));
  generate->add_option("--n", ga.n, "Number of tasks")->capture_default_str()->check(CLI::PositiveNumber);
  generate->add_option("--x,--max-active", ga.x, "Maximum simultaneously active tasks")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  generate->add_option("--uavs", ga.uavs, "Number of identical UAVs")->capture_default_str()->check(
      CLI::PositiveNumber);
  generate->add_option("--type", ga.types, "Shot types used first, in order (shot-mix)");
  generate->add_option("--sample-period", ga.params.sample_period, "Seconds between generated waypoints")
      ->capture_default_str();
  add_gen_params(generate, ga.params);

  auto* experiment = app.add_subcommand("experiment", "Run an experiment harness");
  experiment->require_subcommand(1);
  CoverageArgs ca;
  GenParams cparams;
  auto* coverage = experiment->add_subcommand("coverage", "Coverage ratio against fleet size");
  coverage->add_option("--n", ca.n, "Tasks per mission")->capture_default_str()->check(CLI::PositiveNumber);
  coverage->add_option("--x", ca.x, "Maximum active tasks")->capture_default_str()->check(CLI::PositiveNumber);
  coverage->add_option("--repetitions", ca.repetitions, "Seeds")->capture_default_str()->check(
      CLI::PositiveNumber);
  coverage->add_option("--k-max", ca.k_max, "Largest fleet")->capture_default_str()->check(CLI::PositiveNumber);
  coverage->add_option("--workers", ca.workers, "Concurrent repetitions, 0 for all cores")->capture_default_str();
  add_gen_params(coverage, cparams);

  OptimalArgs oa;
  GenParams oparams;
  auto* optimal = experiment->add_subcommand("optimal", "Greedy against the exhaustive optimum");
  optimal->add_option("--n-min", oa.n_min, "Smallest task count")->capture_default_str()->check(
      CLI::PositiveNumber);
  optimal->add_option("--n-max", oa.n_max, "Largest task count")->capture_default_str()->check(
      CLI::PositiveNumber);
  optimal->add_option("--repetitions", oa.repetitions, "Instances per task count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  optimal->add_option("--k", oa.k, "UAVs")->capture_default_str()->check(CLI::PositiveNumber);
  optimal->add_option("--max-active", oa.max_active, "Maximum active tasks")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  optimal->add_option("--oracle-max-vertices", oa.oracle_max_vertices, "Oracle graph size limit")
      ->capture_default_str();
  optimal->add_option("--oracle-max-plans", oa.oracle_max_plans, "Oracle plans per UAV limit")
      ->capture_default_str();
  optimal->add_option("--oracle-max-combinations", oa.oracle_max_combinations, "Oracle joint combinations limit")
      ->capture_default_str();
  optimal->add_option("--timing-repeats", oa.timing_repeats, "Solves per timing median")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  optimal->add_option("--workers", oa.workers, "Concurrent instances, 0 for all cores")->capture_default_str();
  add_gen_params(optimal, oparams);

  auto* graph_dump = app.add_subcommand("graph-dump", "Print the discretization graph");
  graph_dump->add_option("mission", pa.mission, "Mission JSON")->required()->check(CLI::ExistingFile);
  graph_dump->add_option("--map", pa.map, "Map JSON overriding the mission map")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (g.schema) {
      std::cout << kFileSchema << experiment_schema();
      return 0;
    }
    if (*validate) return run_validate(g, pa);
    if (*plan) return run_plan(g, pa);
    if (*rp) return run_replan(g, pa);
    if (*generate) return run_generate(g, ga);
    if (*coverage) return run_coverage(g, ca, cparams);
    if (*optimal) return run_optimal(g, oa, oparams);
    if (*graph_dump) return run_graph_dump(g, pa);
    std::cerr << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
