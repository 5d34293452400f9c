#include "cineplan/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "cineplan/errors.hpp"
#include "cineplan/greedy.hpp"

namespace cineplan {

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
double median_ms(int repeats, Fn&& fn) {
  std::vector<double> samples;
  for (int i = 0; i < std::max(1, repeats); ++i) {
    const auto t0 = Clock::now();
    fn();
    samples.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

// Runs fn(0..count-1) on up to `workers` threads (0 = hardware concurrency).
// Each call writes only its own output slot; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers) : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

CoverageResult run_coverage_experiment(const CoverageConfig& config) {
  if (config.n < 1 || config.x < 1 || config.repetitions < 1 || config.k_max < 1)
    throw std::invalid_argument("coverage experiment needs positive n, x, repetitions and k_max");
  const auto reps = static_cast<std::size_t>(config.repetitions);
  const auto kmax = static_cast<std::size_t>(config.k_max);
  std::vector<std::vector<CoverageRun>> cells(reps);
  parallel_for(reps, config.workers, [&](std::size_t r) {
    GenParams params = config.params;
    params.seed = config.seed + r;
    params.uav_count = config.k_max;
    const Mission mission = gen_longitudinal(config.n, config.x, params);
    GraphOptions go;
    go.alpha = config.alpha;
    go.uav_speed = mission.fleet_speed();
    const DiscretizationGraph graph = build_graph(mission, go);
    const std::vector<UavState> all = initial_states(mission);
    for (std::size_t k = 1; k <= kmax; ++k) {
      const std::span<const UavState> fleet(all.data(), k);
      PlanAssignment a;
      const double ms = median_ms(1, [&] { a = solve_multi(mission, graph, fleet); });
      cells[r].push_back({params.seed, static_cast<int>(k), a.coverage_ratio, ms});
    }
  });
  CoverageResult out;
  out.mean_cr.assign(kmax, 0.0);
  for (auto& cell : cells) {
    int saturated = 0;
    for (const auto& run : cell) {
      out.mean_cr[static_cast<std::size_t>(run.k - 1)] += run.coverage_ratio / config.repetitions;
      if (saturated == 0 && run.coverage_ratio >= 1.0 - 1e-9) saturated = run.k;
    }
    out.saturation.emplace_back(cell.front().seed, saturated);
    out.runs.insert(out.runs.end(), cell.begin(), cell.end());
  }
  return out;
}

OptimalResult run_optimal_experiment(const OptimalConfig& config) {
  if (config.n_min < 1 || config.n_max < config.n_min || config.repetitions < 1 || config.k < 1)
    throw std::invalid_argument("optimal experiment needs 1 <= n_min <= n_max and positive counts");
  const auto reps = static_cast<std::size_t>(config.repetitions);
  const std::size_t groups = static_cast<std::size_t>(config.n_max - config.n_min + 1);
  OptimalResult out;
  out.rows.resize(groups * reps);
  parallel_for(out.rows.size(), config.workers, [&](std::size_t cell) {
    const int n = config.n_min + static_cast<int>(cell / reps);
    GenParams params = config.params;
    params.seed = config.seed + 1000u * static_cast<std::uint64_t>(n) + cell % reps;
    params.uav_count = config.k;
    const Mission mission = gen_shot_mix(n, config.max_active, params);
    GraphOptions go;
    go.alpha = config.alpha;
    go.uav_speed = mission.fleet_speed();
    const DiscretizationGraph graph = build_graph(mission, go);
    const std::vector<UavState> states = initial_states(mission);

    OptimalRow& row = out.rows[cell];
    row.n = n;
    row.seed = params.seed;
    row.vertices = graph.vertex_count();
    PlanAssignment greedy;
    row.greedy_ms = median_ms(config.timing_repeats, [&] { greedy = solve_multi(mission, graph, states); });
    row.greedy_cr = greedy.coverage_ratio;
    try {
      MultiOptimum best;
      row.oracle_ms =
          median_ms(config.timing_repeats, [&] { best = optimal_multi(graph, states, mission.uavs, config.budget); });
      const double total = mission.total_task_duration();
      row.optimal_cr = total > 0.0 ? best.filming_time / total : 0.0;
      row.ratio = row.greedy_cr > 0.0 ? row.optimal_cr / row.greedy_cr : (row.optimal_cr > 0.0 ? 0.0 : 1.0);
      row.status = "ok";
    } catch (const BudgetExceeded& e) {
      row.status = "skipped:" + e.limit();
      row.oracle_ms = 0.0;
    }
  });
  for (std::size_t g = 0; g < groups; ++g) {
    OptimalGroup group;
    group.n = config.n_min + static_cast<int>(g);
    for (std::size_t r = 0; r < reps; ++r) {
      const OptimalRow& row = out.rows[g * reps + r];
      if (row.status != "ok") {
        ++group.skipped;
        continue;
      }
      ++group.instances;
      group.mean_greedy_cr += row.greedy_cr;
      group.mean_optimal_cr += row.optimal_cr;
      group.mean_ratio += row.ratio;
      group.mean_greedy_ms += row.greedy_ms;
      group.mean_oracle_ms += row.oracle_ms;
    }
    if (group.instances > 0) {
      const double c = group.instances;
      group.mean_greedy_cr /= c;
      group.mean_optimal_cr /= c;
      group.mean_ratio /= c;
      group.mean_greedy_ms /= c;
      group.mean_oracle_ms /= c;
    }
    out.groups.push_back(group);
  }
  return out;
}

std::string coverage_csv(const CoverageResult& result) {
  std::ostringstream os;
  os << "row,seed,k,coverage_ratio,saturation_k,planning_ms\n";
  for (const auto& r : result.runs)
    os << "run," << r.seed << ',' << r.k << ',' << num(r.coverage_ratio) << ",," << num(r.planning_ms) << '\n';
  for (std::size_t k = 0; k < result.mean_cr.size(); ++k)
    os << "mean,," << k + 1 << ',' << num(result.mean_cr[k]) << ",,\n";
  for (const auto& [seed, k] : result.saturation) os << "saturation," << seed << ",,," << k << ",\n";
  return os.str();
}

std::string optimal_csv(const OptimalResult& result) {
  std::ostringstream os;
  os << "row,n,seed,status,vertices,greedy_cr,optimal_cr,ratio,greedy_ms,oracle_ms\n";
  for (const auto& r : result.rows) {
    os << "instance," << r.n << ',' << r.seed << ',' << r.status << ',' << r.vertices << ',' << num(r.greedy_cr)
       << ',';
    if (r.status == "ok")
      os << num(r.optimal_cr) << ',' << num(r.ratio) << ',' << num(r.greedy_ms) << ',' << num(r.oracle_ms) << '\n';
    else
      os << ",," << num(r.greedy_ms) << ",\n";
  }
  for (const auto& g : result.groups) {
    os << "group," << g.n << ",," << g.instances << "/" << g.instances + g.skipped << ",,";
    if (g.instances > 0)
      os << num(g.mean_greedy_cr) << ',' << num(g.mean_optimal_cr) << ',' << num(g.mean_ratio) << ','
         << num(g.mean_greedy_ms) << ',' << num(g.mean_oracle_ms) << '\n';
    else
      os << ",,,,\n";
  }
  return os.str();
}

std::string experiment_schema() {
  return R"(coverage CSV (experiment coverage)
  row             run | mean | saturation
  seed            generator seed of the repetition (empty on mean rows)
  k               number of UAVs (empty on saturation rows)
  coverage_ratio  filming time over total task duration; on mean rows the average over seeds
  saturation_k    first k reaching coverage 1, 0 if none (saturation rows only)
  planning_ms     wall-clock greedy planning time for the run (run rows only)

optimal CSV (experiment optimal)
  row             instance | group
  n               number of generated tasks
  seed            generator seed (instance rows only)
  status          ok | skipped:<limit> on instance rows; ok/total on group rows
  vertices        discretization graph size (instance rows only)
  greedy_cr       greedy coverage ratio; group rows hold the mean over ok instances
  optimal_cr      exhaustive optimum coverage ratio (empty when skipped)
  ratio           optimal_cr / greedy_cr (1 when both are 0)
  greedy_ms       median greedy planning time
  oracle_ms       median exhaustive search time

Timing columns are last and vary between runs; every other column is
reproducible for a fixed seed and flags.
)";
}

}  // namespace cineplan
