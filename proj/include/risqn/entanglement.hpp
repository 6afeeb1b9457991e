#pragma once

#include <cstddef>

#include "risqn/geometry.hpp"

namespace risqn {

/// Two-qubit state diagonal in the Bell basis {Phi00, Phi01, Phi10, Phi11},
/// where Phi_mn = (X^m Z^n (x) I)|Phi+>. Fidelity to Phi00 is l00.
struct BellDiagonalState {
  double l00 = 1.0;
  double l01 = 0.0;
  double l10 = 0.0;
  double l11 = 0.0;

  double fidelity() const { return l00; }
  double sum() const { return l00 + l01 + l10 + l11; }
  /// Throws std::invalid_argument unless every coefficient is in [0, 1] and
  /// they sum to one within 1e-12.
  void validate() const;

  /// Werner state: the three non-target coefficients share 1 - fidelity.
  static BellDiagonalState werner(double fidelity);
};

struct MemoryParams {
  double capacity = 1e7;           // pairs/s the QBS memory can store
  double coherence_time = 2.43e-3;  // s
  double processing_time = 4e-6;    // s

  void validate() const;
};

/// Per-link noise strengths. `q_depol` is the total mixing weight of the
/// memory depolarizing channel, 1 - exp(-t / T).
struct NoiseParams {
  double q_depol = 0.0;
  double p_phase = 0.0;
};

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s
inline constexpr double kAttemptRate = 1e6;             // Hz
inline constexpr double kAlphaMin = 0.0005;
inline constexpr double kAlphaMax = 0.5;
inline constexpr double kRateMin = 2.0 * kAlphaMin * kAttemptRate;  // 1 kHz
inline constexpr double kRateMax = 2.0 * kAlphaMax * kAttemptRate;  // 1 MHz

/// Rate-fidelity tradeoff of the single-click generation scheme: the pair
/// rate is 2 alpha * 1 MHz and the twirled pair is Werner with fidelity
/// 1 - alpha. alpha must lie in [kAlphaMin, kAlphaMax].
BellDiagonalState werner_from_alpha(double alpha_s);
double rate_from_alpha(double alpha_s);
double alpha_from_rate(double r_in);
bool rate_in_alpha_domain(double r_in);

/// Memory storage time of the matter qubit: flight time plus processing.
double storage_time(double d_e2e, const MemoryParams& mem);
double storage_time(const NetworkLayout& layout, std::size_t user_index,
                    const MemoryParams& mem);

/// 1 - exp(-t / T).
double depolarizing_weight(double t, const MemoryParams& mem);

/// Depolarizing noise on one qubit: l_jk -> 1/4 + (l_jk - 1/4)(1 - q).
BellDiagonalState depolarize(const BellDiagonalState& s, double q_depol);

/// Turbulence-induced phase-flip probability erf(sigma_R^2).
double phase_damp_prob(double rytov_var);

/// Phase flip (Z on the flying qubit) with probability p2: mixes Phi00 with
/// Phi01 and Phi10 with Phi11.
BellDiagonalState phase_damp(const BellDiagonalState& s, double p2);

/// State delivered to the user: memory depolarization for storage time t,
/// then phase damping of the photon.
BellDiagonalState e2e_state(const BellDiagonalState& initial, double t,
                            const MemoryParams& mem, double p2);
BellDiagonalState e2e_state(const BellDiagonalState& initial,
                            const NoiseParams& noise);

}  // namespace risqn
