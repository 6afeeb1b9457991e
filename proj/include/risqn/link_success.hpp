#pragma once

#include <cstddef>
#include <cstdint>

#include "risqn/fso_channel.hpp"
#include "risqn/geometry.hpp"
#include "risqn/specfun.hpp"

namespace risqn {

/// Everything needed to decide whether one photon makes it through a link.
/// `chi_th` is the gain threshold divided by ris_efficiency * responsivity.
struct LinkBudget {
  double hp = 1.0;
  TurbulenceParams turb;
  PointingParams pt;
  double chi_th = 0.0;

  void validate() const;
};

/// Composes path loss, Gamma-Gamma turbulence (Rytov variance over the full
/// QBS-RIS-user path) and pointing error for one relayed link.
LinkBudget build_link_budget(const EnvironmentParams& env,
                             const LinkGeometry& geometry);
LinkBudget build_link_budget(const EnvironmentParams& env,
                             const NetworkLayout& layout,
                             std::size_t user_index);

/// P(hp * ha * hg > chi_th) by quadrature.
///
/// The pointing gain is integrated out in closed form, which leaves
///
///   P = integral over a > c of f_GG(a) * (1 - (c / a)^vartheta) da,
///   c = chi_th / (hp * A0),
///
/// over the Gamma-Gamma density. The upper limit is cut where a moment bound
/// puts the remaining Gamma-Gamma mass below 1e-12; the remainder is added
/// with the infinite-interval map.
double prob_success(const LinkBudget& budget,
                    const specfun::QuadratureConfig& cfg = {});

struct McEstimate {
  double probability = 0.0;
  /// Binomial standard error. With zero or all successes it is evaluated at
  /// the Laplace estimate (k + 1) / (n + 2) so it never collapses to zero.
  double std_error = 0.0;
  std::size_t successes = 0;
  std::size_t samples = 0;
};

/// Monte-Carlo estimate of prob_success from sampled channel gains.
McEstimate prob_success_mc(const LinkBudget& budget, std::size_t n_samples,
                           std::uint64_t rng_seed);

/// Delivered pair rate R_in * P_succ.
double e2e_rate(double p_succ, double r_in);

/// Smallest u with P(ha > u) < `mass` by a Markov moment bound.
double gamma_gamma_tail_cutoff(const TurbulenceParams& t, double mass = 1e-12);

}  // namespace risqn
