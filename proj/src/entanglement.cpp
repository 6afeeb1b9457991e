#include "risqn/entanglement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace risqn {

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

}  // namespace

void BellDiagonalState::validate() const {
  for (double c : {l00, l01, l10, l11}) {
    require_probability(c, "Bell-diagonal coefficient");
  }
  if (std::abs(sum() - 1.0) > 1e-12) {
    throw std::invalid_argument("Bell-diagonal coefficients must sum to 1");
  }
}

BellDiagonalState BellDiagonalState::werner(double fidelity) {
  require_probability(fidelity, "Werner fidelity");
  const double rest = (1.0 - fidelity) / 3.0;
  return {fidelity, rest, rest, rest};
}

void MemoryParams::validate() const {
  if (!(capacity > 0.0 && coherence_time > 0.0 && processing_time >= 0.0)) {
    throw std::invalid_argument("memory parameters must be positive");
  }
}

BellDiagonalState werner_from_alpha(double alpha_s) {
  if (!(alpha_s >= kAlphaMin && alpha_s <= kAlphaMax)) {
    throw std::invalid_argument("alpha_s outside [0.0005, 0.5]");
  }
  return BellDiagonalState::werner(1.0 - alpha_s);
}

double rate_from_alpha(double alpha_s) {
  if (!(alpha_s >= kAlphaMin && alpha_s <= kAlphaMax)) {
    throw std::invalid_argument("alpha_s outside [0.0005, 0.5]");
  }
  return 2.0 * alpha_s * kAttemptRate;
}

bool rate_in_alpha_domain(double r_in) {
  return r_in >= kRateMin && r_in <= kRateMax;
}

double alpha_from_rate(double r_in) {
  if (!rate_in_alpha_domain(r_in)) {
    throw std::invalid_argument("initial rate outside [1 kHz, 1 MHz]");
  }
  return r_in / (2.0 * kAttemptRate);
}

double storage_time(double d_e2e, const MemoryParams& mem) {
  if (d_e2e < 0.0) throw std::invalid_argument("storage_time: negative distance");
  return d_e2e / kSpeedOfLight + mem.processing_time;
}

double storage_time(const NetworkLayout& layout, std::size_t user_index,
                    const MemoryParams& mem) {
  return storage_time(e2e_distance(layout, user_index), mem);
}

double depolarizing_weight(double t, const MemoryParams& mem) {
  if (t < 0.0) throw std::invalid_argument("depolarizing_weight: negative time");
  return -std::expm1(-t / mem.coherence_time);
}

BellDiagonalState depolarize(const BellDiagonalState& s, double q_depol) {
  require_probability(q_depol, "depolarizing weight");
  const double keep = 1.0 - q_depol;
  auto mix = [keep](double l) { return 0.25 + (l - 0.25) * keep; };
  return {mix(s.l00), mix(s.l01), mix(s.l10), mix(s.l11)};
}

double phase_damp_prob(double rytov_var) {
  if (rytov_var < 0.0) {
    throw std::invalid_argument("phase_damp_prob: negative Rytov variance");
  }
  return std::erf(rytov_var);
}

BellDiagonalState phase_damp(const BellDiagonalState& s, double p2) {
  require_probability(p2, "phase damping probability");
  const double keep = 1.0 - p2;
  return {keep * s.l00 + p2 * s.l01, keep * s.l01 + p2 * s.l00,
          keep * s.l10 + p2 * s.l11, keep * s.l11 + p2 * s.l10};
}

BellDiagonalState e2e_state(const BellDiagonalState& initial, double t,
                            const MemoryParams& mem, double p2) {
  return e2e_state(initial, {depolarizing_weight(t, mem), p2});
}

BellDiagonalState e2e_state(const BellDiagonalState& initial,
                            const NoiseParams& noise) {
  return phase_damp(depolarize(initial, noise.q_depol), noise.p_phase);
}

}  // namespace risqn
