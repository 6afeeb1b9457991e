#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "risqn/entanglement.hpp"
#include "risqn/fso_channel.hpp"
#include "risqn/geometry.hpp"
#include "risqn/specfun.hpp"

namespace risqn {

struct UserDemand {
  double weight = 1.0;
  double min_rate = 1.0;       // pairs/s, delivered
  double min_fidelity = 0.5;

  void validate() const;
};

/// Which path length feeds the Rytov variance of the phase-damping noise.
enum class RytovDistance { e2e, ris_user };

/// One instance of the joint RIS placement / rate allocation problem.
struct ProblemInstance {
  Point3D qbs{0.0, 0.0, 90.0};
  std::vector<Point3D> users;
  DeploymentRegion region = default_region();
  EnvironmentParams env;
  MemoryParams mem;
  std::vector<UserDemand> demands;
  double fairness_threshold = 0.95;
  double min_separation = kMinRisUserSeparation;
  RytovDistance phase_noise_distance = RytovDistance::ris_user;
  specfun::QuadratureConfig quadrature;

  std::size_t size() const { return users.size(); }
  std::vector<double> weights() const;
  void validate() const;
};

/// Which constraints of the problem a solution is judged against.
struct ConstraintSet {
  bool memory = true;
  bool min_rate = true;
  bool fairness = true;
  bool fidelity = true;
  bool region = true;
  bool separation = true;

  static ConstraintSet all() { return {}; }
};

struct FeasibilityFlags {
  bool memory = false;       // sum of initial rates within memory capacity
  bool min_rate = false;     // every delivered rate above its minimum
  bool fairness = false;     // WFI at or above the threshold
  bool fidelity = false;     // every delivered fidelity above its minimum
  bool region = false;       // RIS inside the deployment box
  bool separation = false;   // RIS far enough from every user
  bool rate_domain = false;  // every initial rate inside [1 kHz, 1 MHz]

  /// rate_domain is always required: outside it the rate has no fidelity.
  bool satisfies(const ConstraintSet& c) const;
  bool all() const { return satisfies(ConstraintSet::all()); }
};

/// RIS-position-dependent quantities of one user's link.
struct UserChannel {
  double d_sr = 0.0;
  double d_ri = 0.0;
  double p_succ = 0.0;
  double storage_time = 0.0;
  double q_depol = 0.0;
  double p_phase = 0.0;
};

struct AllocationSolution {
  Point3D ris;
  std::vector<double> r_in;
  std::vector<double> p_succ;
  std::vector<double> r_e2e;
  std::vector<double> fidelity;
  double wfi = 0.0;        // 0 when every delivered rate is zero
  double objective = 0.0;  // sum_i w_i r_e2e_i
  FeasibilityFlags flags;
  bool feasible = false;   // all problem constraints hold

  std::size_t size() const { return r_in.size(); }
};

/// Jain's fairness index. Rates must be nonnegative and not all zero.
double jfi(std::span<const double> rates);

/// Weighted fairness index (sum r)^2 / sum(r^2 / w), with the weights
/// normalized to sum to one. Lies in (0, 1]; 1 iff r is proportional to w.
double wfi(std::span<const double> rates, std::span<const double> weights);

std::vector<UserChannel> channel_state(const ProblemInstance& instance,
                                       const Point3D& ris);

/// Delivered fidelity for a user served at initial rate r_in.
double delivered_fidelity(const UserChannel& channel, double r_in);

/// Largest initial rate whose delivered fidelity still meets `min_fidelity`,
/// or a negative value when even the 1 kHz floor misses it.
double max_rate_for_fidelity(const UserChannel& channel, double min_fidelity);

/// Full evaluation of one candidate (RIS position, initial rates).
AllocationSolution evaluate(const ProblemInstance& instance, const Point3D& ris,
                            std::span<const double> r_in);

/// Same as evaluate, reusing precomputed channel state for this RIS position.
AllocationSolution evaluate_with_channels(const ProblemInstance& instance,
                                          const Point3D& ris,
                                          std::span<const UserChannel> channels,
                                          std::span<const double> r_in);

FeasibilityFlags check_feasibility(const ProblemInstance& instance,
                                   const AllocationSolution& solution);

}  // namespace risqn
