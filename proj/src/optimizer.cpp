#include "risqn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace risqn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
  AllocationSolution solution;
  double score = kNegInf;
};

bool admissible(const AllocationSolution& s, const ConstraintSet& c, Framework f) {
  if (!s.flags.satisfies(c)) return false;
  if (f == Framework::log_rate_max) {
    return std::all_of(s.r_e2e.begin(), s.r_e2e.end(), [](double r) { return r > 0.0; });
  }
  return true;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// One attempt at a random feasible start: a uniform RIS position, then rates
// drawn inside the box that the fidelity caps, the memory budget and the
// minimum-rate demands leave open. With a fairness constraint the rates are
// proportional to w_i / p_i, which makes the WFI exactly one.
bool random_start(const ProblemInstance& inst, const ConstraintSet& cons,
                  Framework framework, std::mt19937_64& rng, Candidate& out,
                  Energy energy, std::size_t& evaluations) {
  const DeploymentRegion& r = inst.region;
  const Point3D ris{uniform(rng, r.x_min, r.x_max), uniform(rng, r.y_min, r.y_max),
                    uniform(rng, r.h_min, r.h_max)};
  if (cons.separation && !ris_separation_ok(ris, inst.users, inst.min_separation)) {
    return false;
  }
  const std::vector<UserChannel> channels = channel_state(inst, ris);
  const std::size_t n = inst.size();

  std::vector<double> cap(n, kRateMax);
  for (std::size_t i = 0; i < n; ++i) {
    if (cons.fidelity) {
      cap[i] = max_rate_for_fidelity(channels[i], inst.demands[i].min_fidelity);
      if (cap[i] < kRateMin) return false;
    }
  }

  std::vector<double> rates(n);
  if (cons.fairness) {
    std::vector<double> base(n);
    double base_sum = 0.0;
    double s_lo = 0.0;
    double s_hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(channels[i].p_succ > 0.0)) return false;
      base[i] = inst.demands[i].weight / channels[i].p_succ;
      base_sum += base[i];
      s_lo = std::max(s_lo, kRateMin / base[i]);
      if (cons.min_rate) s_lo = std::max(s_lo, inst.demands[i].min_rate / inst.demands[i].weight);
      s_hi = std::min(s_hi, cap[i] / base[i]);
    }
    if (cons.memory) s_hi = std::min(s_hi, inst.mem.capacity / base_sum);
    if (!(s_lo <= s_hi)) return false;
    const double s = uniform(rng, s_lo, s_hi);
    for (std::size_t i = 0; i < n; ++i) {
      rates[i] = std::clamp(s * base[i], kRateMin, cap[i]);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      double lo = kRateMin;
      if (cons.min_rate && channels[i].p_succ > 0.0) {
        lo = std::max(lo, inst.demands[i].min_rate / channels[i].p_succ);
      }
      if (lo > cap[i]) return false;
      rates[i] = uniform(rng, lo, cap[i]);
    }
  }

  AllocationSolution sol = evaluate_with_channels(inst, ris, channels, rates);
  ++evaluations;
  if (!admissible(sol, cons, framework)) return false;
  out.score = framework_score(framework, energy, sol, inst);
  out.solution = std::move(sol);
  return true;
}

}  // namespace

Framework parse_framework(std::string_view name) {
  if (name == "proposed") return Framework::proposed;
  if (name == "rate-max" || name == "rate_max") return Framework::rate_max;
  if (name == "log-rate-max" || name == "log_rate_max") return Framework::log_rate_max;
  if (name == "fa" || name == "FA" || name == "fidelity-agnostic") {
    return Framework::fidelity_agnostic;
  }
  if (name == "ffa" || name == "FFA" || name == "fidelity-fairness-agnostic") {
    return Framework::fidelity_fairness_agnostic;
  }
  throw std::invalid_argument("unknown framework: " + std::string(name));
}

std::string_view to_string(Framework f) {
  switch (f) {
    case Framework::proposed: return "proposed";
    case Framework::rate_max: return "rate-max";
    case Framework::log_rate_max: return "log-rate-max";
    case Framework::fidelity_agnostic: return "fa";
    case Framework::fidelity_fairness_agnostic: return "ffa";
  }
  return "unknown";
}

Energy parse_energy(std::string_view name) {
  if (name == "weighted-sum-rate" || name == "wsr") return Energy::weighted_sum_rate;
  if (name == "wfi") return Energy::wfi;
  throw std::invalid_argument("unknown energy: " + std::string(name));
}

std::string_view to_string(Energy e) {
  return e == Energy::wfi ? "wfi" : "weighted-sum-rate";
}

ConstraintSet constraints_for(Framework f) {
  ConstraintSet c = ConstraintSet::all();
  switch (f) {
    case Framework::proposed: break;
    case Framework::rate_max: c.fairness = false; break;
    case Framework::log_rate_max: c.fairness = false; c.min_rate = false; break;
    case Framework::fidelity_agnostic: c.fidelity = false; break;
    case Framework::fidelity_fairness_agnostic:
      c.fidelity = false;
      c.fairness = false;
      break;
  }
  return c;
}

double framework_score(Framework f, Energy energy, const AllocationSolution& s,
                       const ProblemInstance& instance) {
  if (f == Framework::log_rate_max) {
    double u = 0.0;
    for (std::size_t i = 0; i < s.r_e2e.size(); ++i) {
      if (!(s.r_e2e[i] > 0.0)) return kNegInf;
      u += instance.demands[i].weight * std::log(s.r_e2e[i]);
    }
    return u;
  }
  return energy == Energy::wfi ? s.wfi : s.objective;
}

void SAConfig::validate() const {
  if (!(t_min > 0.0 && t0 > t_min)) throw std::invalid_argument("SA: need t0 > t_min > 0");
  if (!(cooling > 0.0 && cooling < 1.0)) throw std::invalid_argument("SA: cooling outside (0,1)");
  if (iters_per_temp < 1) throw std::invalid_argument("SA: iters_per_temp must be >= 1");
  if (!(neighbor_step_pos >= 0.0 && neighbor_step_rate >= 0.0)) {
    throw std::invalid_argument("SA: neighbor steps must be nonnegative");
  }
  if (init_restarts < 1) throw std::invalid_argument("SA: init_restarts must be >= 1");
}

OptimizerResult simulated_annealing(const ProblemInstance& instance, const SAConfig& cfg,
                                    Framework framework) {
  instance.validate();
  cfg.validate();
  const ConstraintSet cons = constraints_for(framework);
  std::mt19937_64 rng(cfg.seed);
  OptimizerResult result;

  Candidate current;
  bool found = false;
  for (int attempt = 0; attempt < cfg.init_restarts && !found; ++attempt) {
    ++result.init_attempts;
    found = random_start(instance, cons, framework, rng, current, cfg.energy,
                         result.evaluations);
  }
  if (!found) {
    throw NoFeasibleSolution("no feasible starting point after " +
                             std::to_string(cfg.init_restarts) + " attempts");
  }

  // The log utility can be negative or near zero, so it is normalized by its
  // magnitude with a floor of one.
  double scale = std::abs(current.score);
  if (framework == Framework::log_rate_max) scale = std::max(scale, 1.0);
  if (!(scale > 0.0)) scale = 1.0;

  Candidate best = current;
  const DeploymentRegion& reg = instance.region;
  std::uniform_int_distribution<std::size_t> pick_user(0, instance.size() - 1);

  for (double temp = cfg.t0; temp > cfg.t_min; temp *= cfg.cooling) {
    TraceEntry entry;
    entry.temperature = temp;
    for (int l = 0; l < cfg.iters_per_temp; ++l) {
      ++entry.proposals;
      const Point3D& p = current.solution.ris;
      const double sp = cfg.neighbor_step_pos;
      const Point3D ris{
          std::clamp(p.x + uniform(rng, -sp, sp), reg.x_min, reg.x_max),
          std::clamp(p.y + uniform(rng, -sp, sp), reg.y_min, reg.y_max),
          std::clamp(p.h + uniform(rng, -sp, sp), reg.h_min, reg.h_max)};
      std::vector<double> rates = current.solution.r_in;
      const std::size_t j = pick_user(rng);
      rates[j] = std::clamp(
          rates[j] + uniform(rng, -cfg.neighbor_step_rate, cfg.neighbor_step_rate),
          kRateMin, kRateMax);
      const double r = uniform(rng, 0.0, 1.0);

      AllocationSolution cand = evaluate(instance, ris, rates);
      ++result.evaluations;
      if (!admissible(cand, cons, framework)) continue;
      ++entry.feasible;

      const double score = framework_score(framework, cfg.energy, cand, instance);
      const double delta = (score - current.score) / scale;
      bool accept = delta > 0.0;
      if (!accept) {
        ++entry.downhill;
        if (std::exp(delta / temp) > r) {
          accept = true;
          ++entry.downhill_accepted;
        }
      }
      if (accept) {
        current.solution = std::move(cand);
        current.score = score;
        if (current.score > best.score) best = current;
      }
    }
    entry.best_score = best.score;
    entry.current_score = current.score;
    result.trace.push_back(entry);
  }

  result.best = std::move(best.solution);
  result.best_score = best.score;
  return result;
}

OptimizerResult solve_baseline(const ProblemInstance& instance, Framework framework,
                               const SAConfig& cfg) {
  return simulated_annealing(instance, cfg, framework);
}

void GridSpec::validate() const {
  if (nx < 1 || ny < 1 || nh < 1 || rate_levels < 1) {
    throw std::invalid_argument("grid sizes must be >= 1");
  }
}

std::vector<double> rate_grid(const ProblemInstance& instance, int levels) {
  if (levels < 1) throw std::invalid_argument("rate_grid: levels must be >= 1");
  const double hi = std::min(kRateMax, instance.mem.capacity);
  if (hi < kRateMin) throw std::invalid_argument("rate_grid: capacity below 1 kHz");
  std::vector<double> g(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) {
    g[static_cast<std::size_t>(k)] =
        levels == 1 ? hi : kRateMin + (hi - kRateMin) * k / (levels - 1);
  }
  return g;
}

namespace {

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    v[static_cast<std::size_t>(k)] = n == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (n - 1);
  }
  return v;
}

}  // namespace

AllocationSolution exhaustive_search(const ProblemInstance& instance, const GridSpec& grid,
                                     Framework framework, Energy energy) {
  instance.validate();
  grid.validate();
  const std::size_t n = instance.size();
  const std::vector<double> levels = rate_grid(instance, grid.rate_levels);

  const double positions = static_cast<double>(grid.nx) * grid.ny * grid.nh;
  const double total = positions * std::pow(static_cast<double>(levels.size()),
                                            static_cast<double>(n));
  if (total > static_cast<double>(grid.max_evaluations)) {
    throw BudgetExceeded("exhaustive grid has " + std::to_string(total) +
                         " points, budget is " + std::to_string(grid.max_evaluations));
  }

  const ConstraintSet cons = constraints_for(framework);
  const DeploymentRegion& reg = instance.region;
  Candidate best;
  bool found = false;
  std::vector<std::size_t> idx(n);
  std::vector<double> rates(n);

  for (double x : axis(reg.x_min, reg.x_max, grid.nx)) {
    for (double y : axis(reg.y_min, reg.y_max, grid.ny)) {
      for (double h : axis(reg.h_min, reg.h_max, grid.nh)) {
        const Point3D ris{x, y, h};
        if (cons.separation && !ris_separation_ok(ris, instance.users, instance.min_separation)) {
          continue;
        }
        const std::vector<UserChannel> channels = channel_state(instance, ris);
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
          for (std::size_t i = 0; i < n; ++i) rates[i] = levels[idx[i]];
          AllocationSolution sol = evaluate_with_channels(instance, ris, channels, rates);
          if (admissible(sol, cons, framework)) {
            const double score = framework_score(framework, energy, sol, instance);
            if (!found || score > best.score) {
              best.solution = std::move(sol);
              best.score = score;
              found = true;
            }
          }
          // Odometer over rate levels, last user fastest.
          std::size_t k = n;
          while (k > 0) {
            --k;
            if (++idx[k] < levels.size()) break;
            idx[k] = 0;
            if (k == 0) { k = n + 1; break; }
          }
          if (k == n + 1) break;
        }
      }
    }
  }
  if (!found) throw NoFeasibleSolution("no feasible point on the exhaustive grid");
  return best.solution;
}

}  // namespace risqn
