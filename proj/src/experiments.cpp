#include "risqn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "risqn/link_success.hpp"

namespace risqn {

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kColumns{
    "experiment", "cell",     "framework", "seed",    "rep",         "user",
    "sweep_1",    "sweep_2",  "n_users",   "ris_x",   "ris_y",       "ris_h",
    "user_x",     "user_y",   "weight",    "f_min",   "d_e2e",       "r_in",
    "p_succ",     "r_e2e",    "fidelity",  "wfi",     "objective",   "sum_rate",
    "feasible",   "status",   "wall_time"};

std::string num(double v) { return format_number(v); }
std::string num(std::uint64_t v) { return format_number(v); }
std::string num(int v) { return format_number(static_cast<std::int64_t>(v)); }

/// One optimizer run: a scenario cell at one repetition.
struct Job {
  std::string cell;
  Framework framework = Framework::proposed;
  ScenarioConfig cfg;
  int rep = 0;
  double sweep_1 = std::nan("");
  double sweep_2 = std::nan("");
  std::function<void(ProblemInstance&)> adjust;
};

struct JobResult {
  ResultTable rows{kColumns};
  bool feasible = false;
  double sum_rate = 0.0;
  double wfi = 0.0;
  double ris_x = 0.0;
  std::vector<double> fidelity;
  std::vector<double> f_min;
};

std::string opt(double v) { return std::isnan(v) ? std::string() : num(v); }

std::vector<std::string> row_prefix(const RowContext& c) {
  return {c.experiment, c.cell, std::string(to_string(c.framework)), num(c.seed), num(c.rep)};
}

JobResult run_job(const Job& job, const std::string& experiment, const ExperimentOptions& o) {
  const auto start = Clock::now();
  const std::uint64_t rep_seed = derive_seed(o.seed, static_cast<std::uint64_t>(job.rep));
  ProblemInstance inst = resolve_instance(job.cfg, rep_seed);
  if (job.adjust) job.adjust(inst);
  inst.validate();
  SAConfig sa = job.cfg.sa;
  sa.seed = derive_seed(rep_seed, 2);

  RowContext ctx{experiment, job.cell, job.framework, o.seed, job.rep, job.sweep_1,
                 job.sweep_2, ""};
  auto wall = [&] {
    return o.timing ? num(std::chrono::duration<double>(Clock::now() - start).count())
                    : std::string();
  };
  JobResult out;
  try {
    const OptimizerResult res = simulated_annealing(inst, sa, job.framework);
    const AllocationSolution& s = res.best;
    out.feasible = true;
    out.sum_rate = std::accumulate(s.r_e2e.begin(), s.r_e2e.end(), 0.0);
    out.wfi = s.wfi;
    out.ris_x = s.ris.x;
    out.fidelity = s.fidelity;
    for (const auto& d : inst.demands) out.f_min.push_back(d.min_fidelity);
    ctx.wall_time = wall();
    append_solution(out.rows, ctx, inst, s);
  } catch (const NoFeasibleSolution&) {
    ctx.wall_time = wall();
    append_infeasible(out.rows, ctx, inst.size());
  }
  return out;
}

/// Runs `count` tasks on a small pool; results keep task order.
template <typename Result>
std::vector<Result> run_pool(std::size_t count, unsigned threads,
                             const std::function<Result(std::size_t)>& task) {
  std::vector<Result> results(count);
  std::vector<std::exception_ptr> errors(count);
  unsigned n = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = task(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

struct Batch {
  std::vector<Job> jobs;
  std::vector<JobResult> results;
};

ExperimentReport execute(const std::string& name, Batch& batch, const ExperimentOptions& o) {
  batch.results = run_pool<JobResult>(batch.jobs.size(), o.threads, [&](std::size_t i) {
    return run_job(batch.jobs[i], name, o);
  });
  ExperimentReport report;
  report.table = ResultTable(kColumns);
  for (const auto& r : batch.results) {
    report.table.append(r.rows);
    ++report.runs;
    if (r.feasible) ++report.feasible_runs;
  }
  return report;
}

/// Mean of `field` over the feasible runs of one cell; NaN when none.
double cell_mean(const Batch& b, const std::string& cell, Framework fw,
                 double JobResult::*field) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < b.jobs.size(); ++i) {
    if (b.jobs[i].cell != cell || b.jobs[i].framework != fw || !b.results[i].feasible) continue;
    sum += b.results[i].*field;
    ++n;
  }
  return n ? sum / n : std::nan("");
}

double cell_count(const Batch& b, const std::string& cell, Framework fw) {
  int n = 0;
  for (std::size_t i = 0; i < b.jobs.size(); ++i) {
    if (b.jobs[i].cell == cell && b.jobs[i].framework == fw && b.results[i].feasible) ++n;
  }
  return n;
}

EnvironmentParams variant(EnvironmentParams env, std::string_view v) {
  if (v == "rainy") env.attenuation_db_per_km = kRainyAttenuation;
  if (v == "strong") env.cn2 = kStrongCn2;
  if (v == "moderate") env.cn2 = kModerateCn2;
  if (v == "high-pointing") {
    const EnvironmentParams high =
        make_environment(Weather::sunny, Turbulence::moderate, PointingJitter::high);
    env.sigma_theta = high.sigma_theta;
    env.sigma_phi = high.sigma_phi;
  }
  return env;
}

void add_reps(Batch& b, const Job& proto, int reps) {
  for (int r = 0; r < reps; ++r) {
    Job j = proto;
    j.rep = r;
    b.jobs.push_back(std::move(j));
  }
}

ExperimentReport psucc_sweep(const ExperimentOptions& o) {
  struct Preset {
    std::string label;
    Weather w;
    Turbulence t;
    PointingJitter p;
  };
  const std::vector<Preset> presets{
      {"sunny-moderate-low", Weather::sunny, Turbulence::moderate, PointingJitter::low},
      {"sunny-strong-low", Weather::sunny, Turbulence::strong, PointingJitter::low},
      {"rainy-moderate-low", Weather::rainy, Turbulence::moderate, PointingJitter::low},
      {"rainy-strong-low", Weather::rainy, Turbulence::strong, PointingJitter::low},
      {"sunny-moderate-high", Weather::sunny, Turbulence::moderate, PointingJitter::high},
  };
  std::vector<double> distances;
  for (int d = 100; d <= 1000; d += 50) distances.push_back(d);

  const auto tables = run_pool<std::vector<double>>(
      presets.size(), o.threads, [&](std::size_t k) {
        const EnvironmentParams env = make_environment(presets[k].w, presets[k].t, presets[k].p);
        std::vector<double> p;
        for (double d : distances) {
          p.push_back(prob_success(build_link_budget(env, LinkGeometry{d / 2, d / 2}),
                                   o.base.quadrature));
        }
        return p;
      });

  ExperimentReport report;
  report.table = ResultTable(kColumns);
  for (std::size_t k = 0; k < presets.size(); ++k) {
    for (std::size_t i = 0; i < distances.size(); ++i) {
      std::vector<std::string> cells(kColumns.size());
      cells[0] = "psucc-sweep";
      cells[1] = presets[k].label;
      cells[3] = num(o.seed);
      cells[4] = "0";
      cells[6] = num(distances[i]);
      cells[report.table.column("d_e2e")] = num(distances[i]);
      cells[report.table.column("p_succ")] = num(tables[k][i]);
      cells[report.table.column("status")] = "ok";
      report.table.add_row(std::move(cells));
    }
    ++report.runs;
    ++report.feasible_runs;
  }
  int weather_violations = 0;
  int turbulence_violations = 0;
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (!(tables[0][i] > tables[2][i])) ++weather_violations;
    if (!(tables[1][i] > tables[3][i])) ++weather_violations;
    if (!(tables[0][i] > tables[1][i])) ++turbulence_violations;
    if (!(tables[2][i] > tables[3][i])) ++turbulence_violations;
  }
  report.summary["weather_order_violations"] = weather_violations;
  report.summary["turbulence_order_violations"] = turbulence_violations;
  return report;
}

ExperimentReport ris_placement(const ExperimentOptions& o) {
  Batch b;
  const std::vector<std::pair<std::string, std::vector<Point3D>>> layouts{
      {"clustered", clustered_users()}, {"spread", spread_users()}};
  const std::vector<std::pair<std::string, std::vector<double>>> weightings{
      {"equal", {}}, {"weighted", {0.1, 0.3, 0.6}}};
  for (const auto& [lname, users] : layouts) {
    for (const auto& [wname, weights] : weightings) {
      Job j;
      j.cell = lname + "-" + wname;
      j.framework = o.base.framework;
      j.cfg = o.base;
      j.cfg.users = users;
      j.cfg.weights = weights;
      add_reps(b, j, o.reps);
    }
  }
  ExperimentReport report = execute("ris-placement", b, o);
  for (const std::string cell :
       {"clustered-equal", "clustered-weighted", "spread-equal", "spread-weighted"}) {
    report.summary[cell + ".ris_x_mean"] =
        cell_mean(b, cell, o.base.framework, &JobResult::ris_x);
    report.summary[cell + ".feasible"] = cell_count(b, cell, o.base.framework);
  }
  return report;
}

ExperimentReport rate_comparison(const ExperimentOptions& o) {
  Batch b;
  const std::vector<Framework> frameworks{Framework::proposed, Framework::rate_max,
                                          Framework::log_rate_max};
  for (Framework fw : frameworks) {
    Job j;
    j.cell = "clustered-equal";
    j.framework = fw;
    j.cfg = o.base;
    j.cfg.users = clustered_users();
    j.cfg.weights.clear();
    add_reps(b, j, o.reps);
  }
  ExperimentReport report = execute("rate-comparison", b, o);
  const double wfi_prop = cell_mean(b, "clustered-equal", Framework::proposed, &JobResult::wfi);
  for (Framework fw : frameworks) {
    const std::string tag(to_string(fw));
    const double w = cell_mean(b, "clustered-equal", fw, &JobResult::wfi);
    report.summary[tag + ".wfi_mean"] = w;
    report.summary[tag + ".sum_rate_mean"] =
        cell_mean(b, "clustered-equal", fw, &JobResult::sum_rate);
    report.summary[tag + ".feasible"] = cell_count(b, "clustered-equal", fw);
    if (fw != Framework::proposed) report.summary[tag + ".wfi_gain"] = wfi_prop / w - 1.0;
  }
  return report;
}

ExperimentReport fidelity_comparison(const ExperimentOptions& o) {
  Batch b;
  const std::vector<Framework> frameworks{Framework::proposed, Framework::fidelity_agnostic,
                                          Framework::fidelity_fairness_agnostic};
  for (const std::string turb : {"moderate", "strong"}) {
    for (Framework fw : frameworks) {
      Job j;
      j.cell = turb;
      j.framework = fw;
      j.cfg = o.base;
      j.cfg.env = variant(o.base.env, turb);
      j.cfg.users.clear();
      j.cfg.n_users = 3;
      j.cfg.weights.clear();
      j.cfg.min_fidelity_low = j.cfg.min_fidelity_high = 0.7;
      // Users are ordered by distance from the base station.
      j.adjust = [](ProblemInstance& inst) {
        std::sort(inst.users.begin(), inst.users.end(), [&](const Point3D& a, const Point3D& c) {
          return distance(inst.qbs, a) < distance(inst.qbs, c);
        });
      };
      add_reps(b, j, o.reps);
    }
  }
  ExperimentReport report = execute("fidelity-comparison", b, o);
  for (const std::string turb : {"moderate", "strong"}) {
    for (Framework fw : frameworks) {
      const std::string key = turb + "." + std::string(to_string(fw));
      int feasible = 0;
      int violating = 0;
      std::vector<double> fid_sum(3, 0.0);
      for (std::size_t i = 0; i < b.jobs.size(); ++i) {
        const JobResult& r = b.results[i];
        if (b.jobs[i].cell != turb || b.jobs[i].framework != fw || !r.feasible) continue;
        ++feasible;
        bool bad = false;
        for (std::size_t u = 0; u < r.fidelity.size(); ++u) {
          bad = bad || r.fidelity[u] < r.f_min[u];
          fid_sum[u] += r.fidelity[u];
        }
        if (bad) ++violating;
      }
      report.summary[key + ".feasible"] = feasible;
      report.summary[key + ".violation_fraction"] =
          feasible ? static_cast<double>(violating) / feasible : std::nan("");
      for (std::size_t u = 0; u < 3; ++u) {
        report.summary[key + ".fidelity_user" + std::to_string(u + 1)] =
            feasible ? fid_sum[u] / feasible : std::nan("");
      }
    }
  }
  return report;
}

ExperimentReport distance_fidelity_heatmap(const ExperimentOptions& o) {
  Batch b;
  const std::vector<double> distances{400, 410, 420, 430, 440, 450};
  const std::vector<double> fidelities{0.5, 0.55, 0.6, 0.65, 0.7};
  for (const std::string turb : {"moderate", "strong"}) {
    for (double d : distances) {
      for (double f3 : fidelities) {
        Job j;
        j.cell = turb;
        j.framework = o.base.framework;
        j.sweep_1 = d;
        j.sweep_2 = f3;
        j.cfg = o.base;
        j.cfg.env = variant(o.base.env, turb);
        j.cfg.users.clear();
        j.cfg.n_users = 3;
        j.cfg.weights.clear();
        j.cfg.min_fidelity_low = j.cfg.min_fidelity_high = 0.5;
        j.adjust = [d, f3](ProblemInstance& inst) {
          // Third user along the direction of the mean user position, at
          // straight-line distance d from the base station.
          const double dh = inst.qbs.h - inst.users[2].h;
          const double ground = std::sqrt(std::max(0.0, d * d - dh * dh));
          const double ux = 250.0 / std::hypot(250.0, 200.0);
          const double uy = 200.0 / std::hypot(250.0, 200.0);
          inst.users[2] = {inst.qbs.x + ground * ux, inst.qbs.y + ground * uy, inst.users[2].h};
          inst.demands[2].min_fidelity = f3;
        };
        add_reps(b, j, o.reps);
      }
    }
  }
  ExperimentReport report = execute("distance-fidelity-heatmap", b, o);
  for (std::size_t i = 0; i < b.jobs.size(); i += static_cast<std::size_t>(o.reps)) {
    const Job& j = b.jobs[i];
    double sum = 0.0;
    int n = 0;
    for (int r = 0; r < o.reps; ++r) {
      const JobResult& res = b.results[i + static_cast<std::size_t>(r)];
      if (res.feasible) {
        sum += res.sum_rate;
        ++n;
      }
    }
    const std::string key = j.cell + ".d" + num(j.sweep_1) + ".f" + num(j.sweep_2);
    report.summary[key + ".sum_rate_mean"] = n ? sum / n : std::nan("");
    report.summary[key + ".feasible"] = n;
  }
  return report;
}

ExperimentReport scalability(const ExperimentOptions& o) {
  Batch b;
  const std::vector<std::string> envs{"sunny", "rainy", "high-pointing", "strong"};
  for (const auto& env : envs) {
    for (int n : o.user_counts) {
      Job j;
      j.cell = env + "-n" + std::to_string(n);
      j.framework = o.base.framework;
      j.sweep_1 = n;
      j.cfg = o.base;
      j.cfg.env = variant(o.base.env, env);
      j.cfg.users.clear();
      j.cfg.n_users = static_cast<std::size_t>(n);
      j.cfg.weights.clear();
      add_reps(b, j, o.reps);
    }
  }
  ExperimentReport report = execute("scalability", b, o);
  std::map<std::string, double> pooled;
  for (const auto& env : envs) {
    for (int n : o.user_counts) {
      const std::string cell = env + "-n" + std::to_string(n);
      const double m = cell_mean(b, cell, o.base.framework, &JobResult::sum_rate);
      report.summary[cell + ".sum_rate_mean"] = m;
      report.summary[cell + ".feasible"] = cell_count(b, cell, o.base.framework);
      pooled[env] += m;
    }
  }
  for (const auto& env : envs) {
    if (env == "sunny") continue;
    report.summary[env + ".reduction"] = 1.0 - pooled[env] / pooled["sunny"];
  }
  return report;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"psucc-sweep",         "ris-placement",
                                              "rate-comparison",     "fidelity-comparison",
                                              "distance-fidelity-heatmap", "scalability"};
  return names;
}

const std::vector<std::string>& result_columns() { return kColumns; }

void append_solution(ResultTable& table, const RowContext& ctx, const ProblemInstance& inst,
                     const AllocationSolution& s) {
  const double sum_rate = std::accumulate(s.r_e2e.begin(), s.r_e2e.end(), 0.0);
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const LinkGeometry g = link_geometry(inst.qbs, s.ris, inst.users[i]);
    std::vector<std::string> cells = row_prefix(ctx);
    const std::vector<std::string> tail{
        num(static_cast<int>(i + 1)), opt(ctx.sweep_1), opt(ctx.sweep_2),
        num(static_cast<int>(inst.size())), num(s.ris.x), num(s.ris.y), num(s.ris.h),
        num(inst.users[i].x), num(inst.users[i].y), num(inst.demands[i].weight),
        num(inst.demands[i].min_fidelity), num(g.e2e()), num(s.r_in[i]), num(s.p_succ[i]),
        num(s.r_e2e[i]), num(s.fidelity[i]), num(s.wfi), num(s.objective), num(sum_rate),
        s.feasible ? "1" : "0", "ok", ctx.wall_time};
    cells.insert(cells.end(), tail.begin(), tail.end());
    table.add_row(std::move(cells));
  }
}

void append_infeasible(ResultTable& table, const RowContext& ctx, std::size_t n_users) {
  std::vector<std::string> cells = row_prefix(ctx);
  cells.resize(kColumns.size());
  cells[table.column("sweep_1")] = opt(ctx.sweep_1);
  cells[table.column("sweep_2")] = opt(ctx.sweep_2);
  cells[table.column("n_users")] = num(static_cast<int>(n_users));
  cells[table.column("feasible")] = "0";
  cells[table.column("status")] = "infeasible";
  cells[table.column("wall_time")] = ctx.wall_time;
  table.add_row(std::move(cells));
}

ExperimentReport run_experiment(std::string_view name, const ExperimentOptions& options) {
  if (options.reps < 1) throw std::invalid_argument("experiment: reps must be >= 1");
  if (name == "psucc-sweep") return psucc_sweep(options);
  if (name == "ris-placement") return ris_placement(options);
  if (name == "rate-comparison") return rate_comparison(options);
  if (name == "fidelity-comparison") return fidelity_comparison(options);
  if (name == "distance-fidelity-heatmap") return distance_fidelity_heatmap(options);
  if (name == "scalability") {
    if (options.user_counts.empty()) throw std::invalid_argument("scalability: no user counts");
    return scalability(options);
  }
  throw std::invalid_argument("unknown experiment: " + std::string(name));
}

}  // namespace risqn
