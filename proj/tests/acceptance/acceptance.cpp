#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "density.hpp"
#include "risqn/config.hpp"
#include "risqn/experiments.hpp"
#include "risqn/link_success.hpp"
#include "risqn/optimizer.hpp"
#include "risqn/scenario.hpp"
#include "stats.hpp"

using namespace risqn;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

#ifdef RISQN_CONFIG_DIR
const std::filesystem::path kConfigDir = RISQN_CONFIG_DIR;
#else
const std::filesystem::path kConfigDir = "configs";
#endif

ScenarioConfig fast_config() { return load_config(kConfigDir / "fast.ini"); }

// 1. Delivered-state conservation and the density-matrix oracle.
Outcome state_conservation() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::exponential_distribution<double> e(1.0);
  double worst_sum = 0.0, worst_oracle = 0.0;
  bool in_range = true;
  for (int k = 0; k < 1000; ++k) {
    double l[4], s = 0.0;
    for (double& x : l) s += (x = e(rng));
    const BellDiagonalState st{l[0] / s, l[1] / s, l[2] / s, l[3] / s};
    const double T = 1e-4 + 1e-2 * u(rng);
    const double t = 2e-2 * u(rng);
    const double p2 = u(rng);
    MemoryParams mem;
    mem.coherence_time = T;
    const BellDiagonalState out = e2e_state(st, t, mem, p2);
    const BellDiagonalState ref = testing::e2e_state_oracle(st, t, T, p2);
    for (double c : {out.l00, out.l01, out.l10, out.l11}) in_range = in_range && c >= 0.0 && c <= 1.0;
    worst_sum = std::max(worst_sum, std::abs(out.sum() - 1.0));
    worst_oracle = std::max({worst_oracle, std::abs(out.l00 - ref.l00), std::abs(out.l01 - ref.l01),
                             std::abs(out.l10 - ref.l10), std::abs(out.l11 - ref.l11)});
  }
  const double dt = seconds_since(t0);
  return {in_range && worst_sum <= 1e-12 && worst_oracle <= 1e-10 && dt < 1.0,
          fmt("max |sum-1| %.2e, max oracle deviation %.2e, %.3f s", worst_sum, worst_oracle, dt)};
}

// 2. Quadrature success probability against Monte Carlo.
Outcome success_probability_vs_mc() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> dist(200.0, 900.0), split(0.2, 0.8);
  int ok = 0;
  double worst_z = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Weather w = (k & 1) ? Weather::rainy : Weather::sunny;
    const Turbulence tb = (k & 2) ? Turbulence::strong : Turbulence::moderate;
    const double d = dist(rng);
    const double f = split(rng);
    const LinkBudget b = build_link_budget(make_environment(w, tb), LinkGeometry{f * d, (1.0 - f) * d});
    const double p = prob_success(b);
    const McEstimate mc = prob_success_mc(b, 1'000'000, derive_seed(202, k));
    const double z = std::abs(p - mc.probability) / mc.std_error;
    worst_z = std::max(worst_z, z);
    if (z <= 3.0) ++ok;
  }
  const double dt = seconds_since(t0);
  return {ok == 20 && dt < 120.0, fmt("%d/20 budgets within 3 sigma, worst %.2f sigma, %.1f s", ok, worst_z, dt)};
}

// 3. Sampler distributions and density normalization.
Outcome distributions() {
  constexpr std::size_t n = 1'000'000;
  const EnvironmentParams env;
  const TurbulenceParams t = turbulence_params(rytov_variance(env, 500.0));
  const PointingParams p = pointing_params(env, 250.0, 250.0);
  ChannelSampler st(303), sp(304);
  std::vector<double> ha(n), hg(n);
  for (std::size_t i = 0; i < n; ++i) {
    ha[i] = st.turbulence(t);
    hg[i] = sp.pointing(p);
  }
  const double d_turb = testing::ks_distance(ha, 2000, [&](const std::vector<double>& x) {
    return testing::gamma_gamma_cdf(t, x);
  });
  const double d_point = testing::ks_distance(hg, 2000, [&](const std::vector<double>& x) {
    std::vector<double> f;
    for (double v : x) f.push_back(pointing_cdf(v, p));
    return f;
  });

  double worst_mass = 0.0;
  for (double s2 : {0.05, 0.28, 0.56, 1.5, 4.0}) {
    const TurbulenceParams tt = turbulence_params(s2);
    const double m = specfun::integrate([&](double a) { return gamma_gamma_pdf(a, tt); }, 0.0,
                                        std::numeric_limits<double>::infinity());
    worst_mass = std::max(worst_mass, std::abs(m - 1.0));
  }
  for (const auto& [a, b] : {std::pair{100.0, 100.0}, std::pair{250.0, 250.0}, std::pair{600.0, 300.0}}) {
    for (PointingJitter j : {PointingJitter::low, PointingJitter::high}) {
      const PointingParams pp = pointing_params(make_environment(Weather::sunny, Turbulence::moderate, j), a, b);
      const double m = specfun::integrate([&](double h) { return pointing_pdf(h, pp); }, 0.0, pp.a0);
      worst_mass = std::max(worst_mass, std::abs(m - 1.0));
    }
  }
  return {d_turb <= 0.002 && d_point <= 0.002 && worst_mass <= 1e-6,
          fmt("KS Gamma-Gamma %.5f, KS pointing %.5f, max |mass-1| %.2e", d_turb, d_point, worst_mass)};
}

ProblemInstance scenario_one(const ScenarioConfig& base) {
  ScenarioConfig cfg = base;
  cfg.users = clustered_users();
  cfg.weights.clear();
  return resolve_instance(cfg, cfg.seed);
}

// 4. Annealing against the exhaustive grid optimum.
Outcome sa_near_optimal() {
  const auto t0 = Clock::now();
  const ScenarioConfig cfg = load_config(kConfigDir / "default.ini");
  const ProblemInstance inst = scenario_one(cfg);
  GridSpec grid;
  grid.nx = 10;
  grid.ny = 10;
  grid.nh = 4;
  grid.rate_levels = 8;
  const double opt = exhaustive_search(inst, grid).objective;
  int within = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SAConfig sa = cfg.sa;
    sa.seed = seed;
    const OptimizerResult r = simulated_annealing(inst, sa);
    const double ratio = r.best.feasible ? r.best.objective / opt : 0.0;
    worst = std::min(worst, ratio);
    if (ratio >= 0.94) ++within;
  }
  const double dt = seconds_since(t0);
  return {within >= 9 && dt < 300.0,
          fmt("%d/10 seeds within 6%% of grid optimum %.6g, worst ratio %.4f, %.1f s", within, opt, worst, dt)};
}

ExperimentOptions experiment_options(int reps) {
  ExperimentOptions o;
  o.base = fast_config();
  o.reps = reps;
  o.seed = o.base.seed;
  return o;
}

// 5. Fairness of the proposed framework against the rate-maximizing baselines.
Outcome fairness_comparison() {
  const ExperimentReport r = run_experiment("rate-comparison", experiment_options(50));
  const auto& s = r.summary;
  const double prop = s.at("proposed.wfi_mean");
  const double rm = s.at("rate-max.wfi_mean");
  const double lrm = s.at("log-rate-max.wfi_mean");
  const double g1 = s.at("rate-max.wfi_gain");
  const double g2 = s.at("log-rate-max.wfi_gain");
  const bool pass = prop >= 0.95 && rm < prop && lrm < prop && g1 >= 0.4 && g2 >= 0.4;
  return {pass, fmt("WFI proposed %.4f, rate-max %.4f (+%.1f%%), log-rate-max %.4f (+%.1f%%)", prop, rm,
                    100 * g1, lrm, 100 * g2)};
}

// 6. Fidelity demands under strong turbulence.
Outcome fidelity_satisfaction() {
  const ExperimentReport r = run_experiment("fidelity-comparison", experiment_options(50));
  const auto& s = r.summary;
  const double prop = s.at("strong.proposed.violation_fraction");
  const double fa = s.at("strong.fa.violation_fraction");
  const double ffa = s.at("strong.ffa.violation_fraction");
  const double n_prop = s.at("strong.proposed.feasible");
  const bool pass = n_prop > 0 && prop == 0.0 && fa >= 0.9 && ffa >= 0.9;
  return {pass, fmt("violating runs: proposed %.0f%% of %.0f, FA %.0f%% of %.0f, FFA %.0f%% of %.0f", 100 * prop,
                    n_prop, 100 * fa, s.at("strong.fa.feasible"), 100 * ffa, s.at("strong.ffa.feasible"))};
}

// 7. Sum-rate reduction per impairment over N in {3, 5, 8}.
Outcome weather_dominance() {
  const auto t0 = Clock::now();
  const ExperimentReport r = run_experiment("scalability", experiment_options(50));
  const auto& s = r.summary;
  const double rain = s.at("rainy.reduction");
  const double point = s.at("high-pointing.reduction");
  const double turb = s.at("strong.reduction");
  const double dt = seconds_since(t0);
  const bool pass = rain >= 0.30 && rain <= 0.60 && point >= 0.20 && point <= 0.45 && turb >= 0.08 &&
                    turb <= 0.30 && rain > point && point > turb && dt < 600.0;
  return {pass, fmt("reduction rainy %.1f%%, high-pointing %.1f%%, strong %.1f%%; sum rate sunny N=3/5/8 "
                    "%.4g/%.4g/%.4g; %.0f s",
                    100 * rain, 100 * point, 100 * turb, s.at("sunny-n3.sum_rate_mean"),
                    s.at("sunny-n5.sum_rate_mean"), s.at("sunny-n8.sum_rate_mean"), dt)};
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

// 8. Ordering of the success probability and the delivered fidelity.
Outcome monotonicity() {
  constexpr double d_sr = 250.0, d_ri = 250.0;
  std::string broken;
  auto sweep = [&](const char* name, const std::vector<double>& xs, const std::function<double(double)>& f) {
    double prev = std::numeric_limits<double>::infinity();
    for (double x : xs) {
      const double y = f(x);
      if (y > prev) {
        broken += fmt(" %s(rises at %.4g)", name, x);
        return;
      }
      prev = y;
    }
  };
  auto psucc = [](const EnvironmentParams& env, double a, double b) {
    return prob_success(build_link_budget(env, LinkGeometry{a, b}));
  };
  const EnvironmentParams base;
  sweep("attenuation", linspace(0.43, 6.27, 10), [&](double k) {
    EnvironmentParams e = base;
    e.attenuation_db_per_km = k;
    return psucc(e, d_sr, d_ri);
  });
  sweep("cn2", linspace(5e-14, 1e-13, 10), [&](double c) {
    EnvironmentParams e = base;
    e.cn2 = c;
    return psucc(e, d_sr, d_ri);
  });
  sweep("sigma_theta", linspace(1e-3, 3e-3, 10), [&](double s) {
    EnvironmentParams e = base;
    e.sigma_theta = s;
    return psucc(e, d_sr, d_ri);
  });
  sweep("sigma_phi", linspace(0.25e-3, 1e-3, 10), [&](double s) {
    EnvironmentParams e = base;
    e.sigma_phi = s;
    return psucc(e, d_sr, d_ri);
  });
  sweep("d_sr", linspace(100.0, 550.0, 10), [&](double d) { return psucc(base, d, d_ri); });
  sweep("d_ri", linspace(100.0, 550.0, 10), [&](double d) { return psucc(base, d_sr, d); });

  const BellDiagonalState w = BellDiagonalState::werner(0.9);
  const MemoryParams mem;
  sweep("fidelity(t)", linspace(0.0, 5e-3, 10), [&](double t) { return e2e_state(w, t, mem, 0.3).fidelity(); });
  sweep("fidelity(p2)", linspace(0.0, 0.5, 10), [&](double p) { return e2e_state(w, 1e-5, mem, p).fidelity(); });

  return {broken.empty(), broken.empty() ? "all sweeps ordered at d_sr = d_ri = 250 m"
                                         : "broken at d_sr = d_ri = 250 m:" + broken};
}

// 9. Byte-identical CSV from repeated CLI runs.
Outcome determinism() {
#ifndef RISQN_CLI_PATH
  return {false, "command-line tool not built"};
#else
  const auto dir = std::filesystem::temp_directory_path() / "risqn_acceptance";
  std::filesystem::create_directories(dir);
  const std::string config = (kConfigDir / "fast.ini").string();
  int identical = 0, total = 0;
  std::string failed;
  for (const std::string& name : experiment_names()) {
    std::string bytes[2];
    bool ran = true;
    for (int k = 0; k < 2; ++k) {
      const auto out = dir / (name + "_" + std::to_string(k) + ".csv");
      std::filesystem::remove(out);
      const std::string cmd = std::string("\"") + RISQN_CLI_PATH + "\" experiment " + name + " --config \"" +
                              config + "\" --reps 1 --seed 7 --out \"" + out.string() + "\" 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      std::ifstream in(out, std::ios::binary);
      ran = ran && rc == 0 && in;
      bytes[k].assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    ++total;
    if (ran && !bytes[0].empty() && bytes[0] == bytes[1]) {
      ++identical;
    } else {
      failed += " " + name;
    }
  }
  std::filesystem::remove_all(dir);
  return {identical == total,
          fmt("%d/%d experiments byte-identical", identical, total) + (failed.empty() ? "" : "; differs:" + failed)};
#endif
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "delivered-state conservation", state_conservation},
      {2, "success probability vs Monte Carlo", success_probability_vs_mc},
      {3, "sampler distributions", distributions},
      {4, "annealing near-optimality", sa_near_optimal},
      {5, "fairness comparison", fairness_comparison},
      {6, "fidelity satisfaction", fidelity_satisfaction},
      {7, "weather dominance", weather_dominance},
      {8, "monotonicity", monotonicity},
      {9, "determinism", determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %d %-38s %s  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
