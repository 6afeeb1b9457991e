#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "risqn/config.hpp"
#include "risqn/csv.hpp"
#include "risqn/experiments.hpp"
#include "risqn/link_success.hpp"
#include "risqn/optimizer.hpp"

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kInfeasible = 2, kNumeric = 3 };

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> reps;
  std::string framework;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "INI scenario file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", c.seed, "Base random seed (overrides the config)");
  cmd->add_option("--out", c.out, "CSV output path (stdout when omitted)");
  cmd->add_option("--reps", c.reps, "Repetitions (overrides the config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--framework", c.framework,
                  "proposed | rate-max | log-rate-max | fa | ffa");
}

risqn::ScenarioConfig load(const Common& c) {
  risqn::ScenarioConfig cfg = c.config.empty() ? risqn::ScenarioConfig{} : risqn::load_config(c.config);
  if (c.seed) {
    cfg.seed = *c.seed;
    cfg.sa.seed = *c.seed;
  }
  if (c.reps) cfg.reps = *c.reps;
  if (!c.framework.empty()) cfg.framework = risqn::parse_framework(c.framework);
  if (!c.out.empty()) cfg.output = c.out;
  return cfg;
}

void write_table(const risqn::ResultTable& table, const std::string& path) {
  if (path.empty()) {
    risqn::write_csv(table, std::cout);
  } else {
    risqn::emit_csv(table, path);
  }
}

void print_summary(const risqn::ExperimentReport& r) {
  std::fprintf(stderr, "runs %zu, feasible %zu\n", r.runs, r.feasible_runs);
  for (const auto& [k, v] : r.summary) std::fprintf(stderr, "%s = %.6g\n", k.c_str(), v);
}

int cmd_psucc(const Common& c, double d_sr, double d_ri) {
  const risqn::ScenarioConfig cfg = load(c);
  const risqn::LinkBudget b = risqn::build_link_budget(cfg.env, {d_sr, d_ri});
  const double p = risqn::prob_success(b, cfg.quadrature);
  if (!std::isfinite(p)) return kNumeric;
  std::printf("p_succ %.12g\n", p);
  if (c.reps) {
    const auto mc = risqn::prob_success_mc(b, static_cast<std::size_t>(*c.reps), cfg.seed);
    std::printf("p_succ_mc %.12g std_error %.3g samples %zu\n", mc.probability, mc.std_error,
                mc.samples);
  }
  return kOk;
}

int cmd_fidelity(const Common& c, double d_e2e, double d_phase, double r_in) {
  const risqn::ScenarioConfig cfg = load(c);
  const double t = risqn::storage_time(d_e2e, cfg.mem);
  const double p2 = risqn::phase_damp_prob(risqn::rytov_variance(cfg.env, d_phase));
  const auto s = risqn::e2e_state(risqn::werner_from_alpha(risqn::alpha_from_rate(r_in)), t,
                                  cfg.mem, p2);
  std::printf("storage_time %.12g\np_phase %.12g\n", t, p2);
  std::printf("l00 %.12g\nl01 %.12g\nl10 %.12g\nl11 %.12g\n", s.l00, s.l01, s.l10, s.l11);
  return kOk;
}

int cmd_evaluate(const Common& c, const std::string& ris, const std::string& rates) {
  const risqn::ScenarioConfig cfg = load(c);
  const risqn::ProblemInstance inst = risqn::resolve_instance(cfg, cfg.seed);
  const std::vector<double> r = risqn::parse_numbers(rates);
  const risqn::AllocationSolution s = risqn::evaluate(inst, risqn::parse_point(ris), r);
  risqn::ResultTable table(risqn::result_columns());
  risqn::append_solution(table, {"evaluate", "config", cfg.framework, cfg.seed, 0, NAN, NAN, ""}, inst, s);
  write_table(table, cfg.output);
  const bool ok = s.flags.satisfies(risqn::constraints_for(cfg.framework));
  std::fprintf(stderr, "feasible for %s: %s\n", std::string(risqn::to_string(cfg.framework)).c_str(),
               ok ? "yes" : "no");
  return kOk;
}

int cmd_optimize(const Common& c) {
  const risqn::ScenarioConfig cfg = load(c);
  const risqn::ProblemInstance inst = risqn::resolve_instance(cfg, cfg.seed);
  // Independent chains with derived seeds; the best objective wins and ties
  // go to the lowest chain index.
  const int chains = c.reps ? *c.reps : 1;
  std::optional<risqn::OptimizerResult> best;
  int best_chain = -1;
  for (int k = 0; k < chains; ++k) {
    risqn::SAConfig sa = cfg.sa;
    sa.seed = chains == 1 ? cfg.sa.seed : risqn::derive_seed(cfg.seed, static_cast<std::uint64_t>(k));
    try {
      risqn::OptimizerResult r = risqn::simulated_annealing(inst, sa, cfg.framework);
      if (!best || r.best_score > best->best_score) {
        best = std::move(r);
        best_chain = k;
      }
    } catch (const risqn::NoFeasibleSolution& e) {
      std::fprintf(stderr, "chain %d: %s\n", k, e.what());
    }
  }
  risqn::ResultTable table(risqn::result_columns());
  if (!best) {
    risqn::append_infeasible(table, {"optimize", "config", cfg.framework, cfg.seed, 0, NAN, NAN, ""},
                             inst.size());
    write_table(table, cfg.output);
    return kInfeasible;
  }
  risqn::append_solution(table, {"optimize", "config", cfg.framework, cfg.seed, best_chain, NAN, NAN, ""},
                         inst, best->best);
  write_table(table, cfg.output);
  std::fprintf(stderr, "objective %.9g wfi %.6g evaluations %zu chain %d\n",
               best->best.objective, best->best.wfi, best->evaluations, best_chain);
  return kOk;
}

int cmd_experiment(const Common& c, const std::string& name, unsigned threads, bool timing,
                   const std::vector<int>& users) {
  const risqn::ScenarioConfig cfg = load(c);
  risqn::ExperimentOptions o;
  o.base = cfg;
  o.reps = cfg.reps;
  o.seed = cfg.seed;
  o.threads = threads;
  o.timing = timing;
  if (!users.empty()) o.user_counts = users;
  const risqn::ExperimentReport r = risqn::run_experiment(name, o);
  write_table(r.table, cfg.output);
  print_summary(r);
  return r.feasible_runs == 0 ? kInfeasible : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement distribution over RIS-assisted FSO links"};
  app.require_subcommand(1);

  Common common;
  double d_sr = 250.0;
  double d_ri = 250.0;
  auto* psucc = app.add_subcommand("psucc", "Link success probability (quadrature, optional MC)");
  add_common(psucc, common);
  psucc->add_option("--d-sr", d_sr, "Base station to RIS distance, m")->check(CLI::NonNegativeNumber);
  psucc->add_option("--d-ri", d_ri, "RIS to user distance, m")->check(CLI::NonNegativeNumber);

  double d_e2e = 500.0;
  double d_phase = 250.0;
  double r_in = 1e5;
  auto* fidelity = app.add_subcommand("fidelity", "Delivered Bell-diagonal state");
  add_common(fidelity, common);
  fidelity->add_option("--d-e2e", d_e2e, "End-to-end path length, m")->check(CLI::NonNegativeNumber);
  fidelity->add_option("--d-phase", d_phase, "Path length driving phase noise, m")
      ->check(CLI::NonNegativeNumber);
  fidelity->add_option("--rate", r_in, "Initial pair rate, pairs/s");

  std::string ris;
  std::string rates;
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate one RIS position and rate vector");
  add_common(evaluate, common);
  evaluate->add_option("--ris", ris, "x,y,h")->required();
  evaluate->add_option("--rates", rates, "r1,r2,... pairs/s")->required();

  unsigned threads = 0;
  bool timing = false;
  auto* optimize = app.add_subcommand("optimize", "Simulated annealing on one instance");
  add_common(optimize, common);

  std::string experiment;
  std::vector<int> users;
  auto* exp = app.add_subcommand("experiment", "Run a named experiment");
  add_common(exp, common);
  exp->add_option("name", experiment, "Experiment name")
      ->required()
      ->check(CLI::IsMember(risqn::experiment_names()));
  exp->add_option("--threads", threads, "Worker threads (0: all cores)");
  exp->add_flag("--timing", timing, "Fill the wall_time column");
  exp->add_option("--users", users, "User counts for scalability")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*psucc) return cmd_psucc(common, d_sr, d_ri);
    if (*fidelity) return cmd_fidelity(common, d_e2e, d_phase, r_in);
    if (*evaluate) return cmd_evaluate(common, ris, rates);
    if (*optimize) return cmd_optimize(common);
    if (*exp) return cmd_experiment(common, experiment, threads, timing, users);
  } catch (const risqn::specfun::QuadratureError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const risqn::NoFeasibleSolution& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}
