#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "risqn/config.hpp"
#include "risqn/csv.hpp"

namespace risqn {

struct ExperimentOptions {
  ScenarioConfig base;           // environment, demands and optimizer settings
  int reps = 50;                 // Monte Carlo repetitions per cell
  std::uint64_t seed = 1;
  unsigned threads = 0;          // 0: hardware concurrency
  bool timing = false;           // fill the wall_time column
  std::vector<int> user_counts{3, 5, 8};  // scalability only
};

struct ExperimentReport {
  ResultTable table;
  std::map<std::string, double> summary;
  std::size_t runs = 0;
  std::size_t feasible_runs = 0;
};

/// psucc-sweep, ris-placement, rate-comparison, fidelity-comparison,
/// distance-fidelity-heatmap, scalability.
const std::vector<std::string>& experiment_names();

/// Column set shared by every experiment table.
const std::vector<std::string>& result_columns();

/// Provenance of the rows describing one optimizer run.
struct RowContext {
  std::string experiment;
  std::string cell;
  Framework framework = Framework::proposed;
  std::uint64_t seed = 0;
  int rep = 0;
  double sweep_1 = std::numeric_limits<double>::quiet_NaN();
  double sweep_2 = std::numeric_limits<double>::quiet_NaN();
  std::string wall_time;  // empty unless timing was requested
};

/// One row per user of `solution`.
void append_solution(ResultTable& table, const RowContext& ctx,
                     const ProblemInstance& instance, const AllocationSolution& solution);
/// A single row marking a run without a feasible solution.
void append_infeasible(ResultTable& table, const RowContext& ctx, std::size_t n_users);

/// Runs one experiment. Repetitions are spread over a worker pool; rows come
/// back in (cell, repetition, user) order whatever the scheduling. Throws
/// std::invalid_argument for an unknown name and specfun::QuadratureError on
/// numerical failure. Infeasible repetitions are reported as rows with
/// status "infeasible".
ExperimentReport run_experiment(std::string_view name, const ExperimentOptions& options);

}  // namespace risqn
