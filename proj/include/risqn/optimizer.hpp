#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "risqn/network_model.hpp"

namespace risqn {

/// What the annealer maximizes: the weighted sum of delivered rates, or the
/// weighted fairness index.
enum class Energy { weighted_sum_rate, wfi };

/// The proposed joint design and the four reference allocation schemes.
enum class Framework {
  proposed,                    // every constraint
  rate_max,                    // no fairness constraint
  log_rate_max,                // no fairness or min-rate constraint, log utility
  fidelity_agnostic,           // no fidelity constraint
  fidelity_fairness_agnostic,  // neither fidelity nor fairness constraint
};

Framework parse_framework(std::string_view name);
std::string_view to_string(Framework f);
Energy parse_energy(std::string_view name);
std::string_view to_string(Energy e);

ConstraintSet constraints_for(Framework f);

/// Value the optimizer maximizes for a solution. log_rate_max always uses
/// sum_i w_i log r_e2e_i; the other frameworks use `energy`.
double framework_score(Framework f, Energy energy,
                       const AllocationSolution& solution,
                       const ProblemInstance& instance);

struct SAConfig {
  double t0 = 1.0;
  double t_min = 1e-4;
  double cooling = 0.95;
  int iters_per_temp = 200;
  double neighbor_step_pos = 10.0;    // m, per axis
  double neighbor_step_rate = 2e4;    // pairs/s, one user per move
  std::uint64_t seed = 1;
  Energy energy = Energy::weighted_sum_rate;
  int init_restarts = 50;

  void validate() const;
};

/// One record per temperature level.
struct TraceEntry {
  double temperature = 0.0;
  double best_score = 0.0;
  double current_score = 0.0;
  int proposals = 0;
  int feasible = 0;
  int downhill = 0;           // feasible proposals with dU <= 0
  int downhill_accepted = 0;
};

struct OptimizerResult {
  AllocationSolution best;
  double best_score = 0.0;
  std::vector<TraceEntry> trace;
  std::size_t evaluations = 0;
  int init_attempts = 0;
};

class NoFeasibleSolution : public std::runtime_error {
 public:
  explicit NoFeasibleSolution(const std::string& what) : std::runtime_error(what) {}
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Metropolis simulated annealing with exponential cooling over (RIS
/// position, initial rates). Infeasible neighbors are rejected outright.
/// Deterministic for a fixed config (seed included).
OptimizerResult simulated_annealing(const ProblemInstance& instance,
                                    const SAConfig& cfg,
                                    Framework framework = Framework::proposed);

/// Same annealer with the constraint set and utility of `framework`.
OptimizerResult solve_baseline(const ProblemInstance& instance,
                               Framework framework, const SAConfig& cfg);

struct GridSpec {
  int nx = 10;
  int ny = 10;
  int nh = 4;
  int rate_levels = 8;
  std::size_t max_evaluations = 50'000'000;

  void validate() const;
};

/// Evenly spaced rate levels on [1 kHz, min(1 MHz, memory capacity)].
std::vector<double> rate_grid(const ProblemInstance& instance, int levels);

/// Best feasible point of the RIS grid x rate-level grid. Ties keep the first
/// point in (x, y, h, rates) lexicographic order. Throws BudgetExceeded when
/// the grid is larger than `grid.max_evaluations` and NoFeasibleSolution when
/// no grid point is feasible.
AllocationSolution exhaustive_search(const ProblemInstance& instance,
                                     const GridSpec& grid,
                                     Framework framework = Framework::proposed,
                                     Energy energy = Energy::weighted_sum_rate);

}  // namespace risqn
