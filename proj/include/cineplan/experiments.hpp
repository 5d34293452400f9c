#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cineplan/oracle.hpp"
#include "cineplan/scenario.hpp"

namespace cineplan {

struct CoverageConfig {
  int n = 20;
  int x = 4;
  int repetitions = 20;
  int k_max = 8;
  std::uint64_t seed = 1;  ///< repetition r uses seed + r
  double alpha = 5.0;
  GenParams params;  ///< seed and uav_count are overwritten
  int workers = 0;   ///< concurrent repetitions; 0 uses the hardware concurrency
};

struct CoverageRun {
  std::uint64_t seed = 0;
  int k = 0;
  double coverage_ratio = 0.0;
  double planning_ms = 0.0;
};

struct CoverageResult {
  std::vector<CoverageRun> runs;           ///< sorted by seed, then k
  std::vector<double> mean_cr;             ///< index k-1
  std::vector<std::pair<std::uint64_t, int>> saturation;  ///< first k with CR = 1, or 0
};

/// Fleet-size sweep over longitudinal scenarios; every k is its own greedy run.
CoverageResult run_coverage_experiment(const CoverageConfig& config);

struct OptimalConfig {
  int n_min = 1;
  int n_max = 6;
  int repetitions = 10;
  std::uint64_t seed = 1;  ///< instance (n, r) uses seed + 1000 n + r
  double alpha = 30.0;
  int k = 3;
  int max_active = 3;
  OracleBudget budget{60, 5000, 1e7};
  int timing_repeats = 5;
  GenParams params;  ///< seed and uav_count are overwritten
  int workers = 0;   ///< concurrent instances; 0 uses the hardware concurrency
  OptimalConfig() { params.sample_period = 30.0; }
};

struct OptimalRow {
  int n = 0;
  std::uint64_t seed = 0;
  std::string status;  ///< "ok" or "skipped:<limit>"
  std::size_t vertices = 0;
  double greedy_cr = 0.0;
  double optimal_cr = 0.0;
  double ratio = 0.0;
  double greedy_ms = 0.0;
  double oracle_ms = 0.0;
};

struct OptimalGroup {
  int n = 0;
  int instances = 0;
  int skipped = 0;
  double mean_greedy_cr = 0.0;
  double mean_optimal_cr = 0.0;
  double mean_ratio = 0.0;
  double mean_greedy_ms = 0.0;
  double mean_oracle_ms = 0.0;
};

struct OptimalResult {
  std::vector<OptimalRow> rows;
  std::vector<OptimalGroup> groups;
};

/// Greedy against the exhaustive optimum on shot-mix scenarios, grouped by
/// task count. Instances over the oracle budget are kept as skipped rows.
OptimalResult run_optimal_experiment(const OptimalConfig& config);

/// CSV renderings. Timing columns come last.
std::string coverage_csv(const CoverageResult& result);
std::string optimal_csv(const OptimalResult& result);
/// Column documentation for both CSV files.
std::string experiment_schema();

}  // namespace cineplan
