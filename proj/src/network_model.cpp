#include "risqn/network_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "risqn/link_success.hpp"

namespace risqn {

void UserDemand::validate() const {
  if (!(weight > 0.0)) throw std::invalid_argument("user weight must be positive");
  if (!(min_rate >= 0.0)) throw std::invalid_argument("minimum rate must be >= 0");
  if (!(min_fidelity >= 0.0 && min_fidelity < 1.0)) {
    throw std::invalid_argument("minimum fidelity must lie in [0, 1)");
  }
}

std::vector<double> ProblemInstance::weights() const {
  std::vector<double> w;
  w.reserve(demands.size());
  for (const auto& d : demands) w.push_back(d.weight);
  return w;
}

void ProblemInstance::validate() const {
  if (users.empty()) throw std::invalid_argument("problem has no users");
  if (demands.size() != users.size()) {
    throw std::invalid_argument("one demand per user is required");
  }
  if (!(fairness_threshold >= 0.0 && fairness_threshold <= 1.0)) {
    throw std::invalid_argument("fairness threshold must lie in [0, 1]");
  }
  region.validate();
  env.validate();
  mem.validate();
  quadrature.validate();
  for (const auto& d : demands) d.validate();
  NetworkLayout{qbs, users, {region.x_min, region.y_min, region.h_min}}.validate();
}

bool FeasibilityFlags::satisfies(const ConstraintSet& c) const {
  return rate_domain && (!c.memory || memory) && (!c.min_rate || min_rate) &&
         (!c.fairness || fairness) && (!c.fidelity || fidelity) &&
         (!c.region || region) && (!c.separation || separation);
}

double jfi(std::span<const double> rates) {
  if (rates.empty()) throw std::invalid_argument("jfi: empty rate vector");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double r : rates) {
    if (r < 0.0) throw std::invalid_argument("jfi: negative rate");
    sum += r;
    sum_sq += r * r;
  }
  if (sum_sq == 0.0) throw std::invalid_argument("jfi: all rates are zero");
  return sum * sum / (static_cast<double>(rates.size()) * sum_sq);
}

double wfi(std::span<const double> rates, std::span<const double> weights) {
  if (rates.size() != weights.size()) {
    throw std::invalid_argument("wfi: rates and weights differ in length");
  }
  if (rates.empty()) throw std::invalid_argument("wfi: empty rate vector");
  double weight_sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("wfi: weights must be positive");
    weight_sum += w;
  }
  double sum = 0.0;
  double weighted_sq = 0.0;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] < 0.0) throw std::invalid_argument("wfi: negative rate");
    sum += rates[i];
    weighted_sq += rates[i] * rates[i] * weight_sum / weights[i];
  }
  if (weighted_sq == 0.0) throw std::invalid_argument("wfi: all rates are zero");
  return sum * sum / weighted_sq;
}

std::vector<UserChannel> channel_state(const ProblemInstance& instance,
                                       const Point3D& ris) {
  std::vector<UserChannel> channels;
  channels.reserve(instance.size());
  for (const auto& user : instance.users) {
    const LinkGeometry g = link_geometry(instance.qbs, ris, user);
    UserChannel ch;
    ch.d_sr = g.d_sr;
    ch.d_ri = g.d_ri;
    ch.storage_time = storage_time(g.e2e(), instance.mem);
    ch.q_depol = depolarizing_weight(ch.storage_time, instance.mem);
    const double phase_d =
        instance.phase_noise_distance == RytovDistance::ris_user ? g.d_ri : g.e2e();
    ch.p_phase = phase_damp_prob(rytov_variance(instance.env, phase_d));
    // A RIS sitting exactly on a node has no defined beam geometry.
    ch.p_succ = (g.d_sr > 0.0 && g.d_ri > 0.0)
                    ? prob_success(build_link_budget(instance.env, g),
                                   instance.quadrature)
                    : 0.0;
    channels.push_back(ch);
  }
  return channels;
}

double delivered_fidelity(const UserChannel& channel, double r_in) {
  const BellDiagonalState initial = werner_from_alpha(alpha_from_rate(r_in));
  return e2e_state(initial, {channel.q_depol, channel.p_phase}).fidelity();
}

double max_rate_for_fidelity(const UserChannel& channel, double min_fidelity) {
  // Delivered fidelity is affine in the rate through the Werner coefficients.
  const double f_lo = delivered_fidelity(channel, kRateMin);
  const double f_hi = delivered_fidelity(channel, kRateMax);
  if (f_hi >= min_fidelity) return kRateMax;
  if (f_lo < min_fidelity) return -1.0;
  double r = kRateMin + (min_fidelity - f_lo) / (f_hi - f_lo) * (kRateMax - kRateMin);
  r = std::clamp(r, kRateMin, kRateMax);
  while (r > kRateMin && delivered_fidelity(channel, r) < min_fidelity) {
    r = std::nextafter(r, kRateMin);
  }
  return r;
}

AllocationSolution evaluate_with_channels(const ProblemInstance& instance,
                                          const Point3D& ris,
                                          std::span<const UserChannel> channels,
                                          std::span<const double> r_in) {
  const std::size_t n = instance.size();
  if (r_in.size() != n || channels.size() != n) {
    throw std::invalid_argument("evaluate: one rate and channel per user required");
  }
  AllocationSolution sol;
  sol.ris = ris;
  sol.r_in.assign(r_in.begin(), r_in.end());
  sol.p_succ.resize(n);
  sol.r_e2e.resize(n);
  sol.fidelity.resize(n);

  bool in_domain = true;
  for (std::size_t i = 0; i < n; ++i) {
    sol.p_succ[i] = channels[i].p_succ;
    if (!(r_in[i] >= 0.0)) throw std::invalid_argument("evaluate: negative rate");
    sol.r_e2e[i] = e2e_rate(channels[i].p_succ, r_in[i]);
    if (rate_in_alpha_domain(r_in[i])) {
      sol.fidelity[i] = delivered_fidelity(channels[i], r_in[i]);
    } else {
      in_domain = false;
      sol.fidelity[i] = 0.0;
    }
    sol.objective += instance.demands[i].weight * sol.r_e2e[i];
  }
  const bool any_rate =
      std::any_of(sol.r_e2e.begin(), sol.r_e2e.end(), [](double r) { return r > 0.0; });
  const std::vector<double> w = instance.weights();
  sol.wfi = any_rate ? wfi(sol.r_e2e, w) : 0.0;
  sol.flags = check_feasibility(instance, sol);
  sol.flags.rate_domain = in_domain;
  sol.feasible = sol.flags.all();
  return sol;
}

AllocationSolution evaluate(const ProblemInstance& instance, const Point3D& ris,
                            std::span<const double> r_in) {
  if (r_in.size() != instance.size()) {
    throw std::invalid_argument("evaluate: one rate per user required");
  }
  const std::vector<UserChannel> channels = channel_state(instance, ris);
  return evaluate_with_channels(instance, ris, channels, r_in);
}

FeasibilityFlags check_feasibility(const ProblemInstance& instance,
                                   const AllocationSolution& solution) {
  const std::size_t n = instance.size();
  if (solution.size() != n || solution.r_e2e.size() != n ||
      solution.fidelity.size() != n) {
    throw std::invalid_argument("check_feasibility: solution size mismatch");
  }
  FeasibilityFlags f;
  const double total_in =
      std::accumulate(solution.r_in.begin(), solution.r_in.end(), 0.0);
  f.memory = total_in <= instance.mem.capacity;
  f.min_rate = f.fidelity = f.rate_domain = true;
  for (std::size_t i = 0; i < n; ++i) {
    f.min_rate = f.min_rate && solution.r_e2e[i] >= instance.demands[i].min_rate;
    f.fidelity = f.fidelity && solution.fidelity[i] >= instance.demands[i].min_fidelity;
    f.rate_domain = f.rate_domain && rate_in_alpha_domain(solution.r_in[i]);
  }
  f.fairness = solution.wfi > 0.0 && solution.wfi >= instance.fairness_threshold;
  f.region = region_contains(instance.region, solution.ris);
  f.separation =
      ris_separation_ok(solution.ris, instance.users, instance.min_separation);
  return f;
}

}  // namespace risqn
