#include "risqn/link_success.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace risqn {

void LinkBudget::validate() const {
  if (!(hp > 0.0 && hp <= 1.0)) {
    throw std::invalid_argument("link budget: hp must be in (0, 1]");
  }
  if (!(chi_th > 0.0)) {
    throw std::invalid_argument("link budget: chi_th must be positive");
  }
  if (!(turb.alpha > 0.0 && turb.beta > 0.0)) {
    throw std::invalid_argument("link budget: turbulence shapes must be positive");
  }
  if (!(pt.a0 > 0.0 && pt.a0 <= 1.0 && pt.vartheta > 0.0)) {
    throw std::invalid_argument("link budget: invalid pointing parameters");
  }
}

LinkBudget build_link_budget(const EnvironmentParams& env,
                             const LinkGeometry& geometry) {
  env.validate();
  const double d = geometry.e2e();
  LinkBudget budget;
  budget.hp = atmospheric_loss(env, d);
  budget.turb = turbulence_params(rytov_variance(env, d));
  budget.pt = pointing_params(env, geometry.d_sr, geometry.d_ri);
  budget.chi_th = env.gain_threshold / (env.ris_efficiency * env.responsivity);
  return budget;
}

LinkBudget build_link_budget(const EnvironmentParams& env,
                             const NetworkLayout& layout,
                             std::size_t user_index) {
  return build_link_budget(env, link_geometry(layout, user_index));
}

double gamma_gamma_tail_cutoff(const TurbulenceParams& t, double mass) {
  // P(ha > u) <= E[ha^k] / u^k with
  // E[ha^k] = G(a+k) G(b+k) / (G(a) G(b) (a b)^k).
  const double a = t.alpha;
  const double b = t.beta;
  const double log_ab = std::log(a * b);
  const double log_mass = std::log(mass);
  double log_moment = 0.0;
  double best_log = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 400; ++k) {
    log_moment += std::log((a + k - 1) * (b + k - 1)) - log_ab;
    const double log_bound = (log_moment - log_mass) / k;
    // The bound is unimodal in k, so stop once it turns upward.
    if (log_bound > best_log) break;
    best_log = log_bound;
  }
  return std::exp(best_log);
}

double prob_success(const LinkBudget& budget,
                    const specfun::QuadratureConfig& cfg) {
  budget.validate();
  const double c = budget.chi_th / (budget.hp * budget.pt.a0);
  const double vartheta = budget.pt.vartheta;
  const double cutoff = gamma_gamma_tail_cutoff(budget.turb);
  if (c >= cutoff) return 0.0;

  const GammaGammaDensity density(budget.turb);
  const double log_c = std::log(c);
  // Integration variable u = log a; the density is far smoother in u.
  const specfun::Integrand integrand = [&](double u) {
    if (u <= log_c) return 0.0;
    return std::exp(density.log_pdf(std::exp(u)) + u) *
           -std::expm1(vartheta * (log_c - u));
  };
  const double log_cut = std::log(cutoff);
  double p = specfun::integrate(integrand, log_c, log_cut, cfg);
  p += specfun::integrate(integrand, log_cut,
                          std::numeric_limits<double>::infinity(), cfg);
  return std::clamp(p, 0.0, 1.0);
}

McEstimate prob_success_mc(const LinkBudget& budget, std::size_t n_samples,
                           std::uint64_t rng_seed) {
  budget.validate();
  if (n_samples == 0) {
    throw std::invalid_argument("prob_success_mc: need at least one sample");
  }
  ChannelSampler sampler(rng_seed);
  const double threshold = budget.chi_th / budget.hp;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double ha = sampler.turbulence(budget.turb);
    const double hg = sampler.pointing(budget.pt);
    if (ha * hg > threshold) ++hits;
  }
  const double n = static_cast<double>(n_samples);
  McEstimate est;
  est.successes = hits;
  est.samples = n_samples;
  est.probability = hits / n;
  double p_for_error = est.probability;
  if (hits == 0 || hits == n_samples) p_for_error = (hits + 1.0) / (n + 2.0);
  est.std_error = std::sqrt(p_for_error * (1.0 - p_for_error) / n);
  return est;
}

double e2e_rate(double p_succ, double r_in) {
  if (!(p_succ >= 0.0 && p_succ <= 1.0)) {
    throw std::invalid_argument("e2e_rate: probability outside [0, 1]");
  }
  if (!(r_in >= 0.0)) throw std::invalid_argument("e2e_rate: negative rate");
  return p_succ * r_in;
}

}  // namespace risqn
