#include "risqn/fso_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "risqn/specfun.hpp"

namespace risqn {

using std::numbers::pi;

double EnvironmentParams::wave_number() const { return 2.0 * pi / wavelength; }

void EnvironmentParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(std::string("environment: ") + name +
                                  " must be positive");
    }
  };
  positive(wavelength, "wavelength");
  positive(attenuation_db_per_km, "attenuation_db_per_km");
  positive(cn2, "cn2");
  positive(aperture_radius, "aperture_radius");
  positive(beam_divergence, "beam_divergence");
  positive(sigma_theta, "sigma_theta");
  positive(sigma_phi, "sigma_phi");
  if (!(ris_efficiency > 0.0 && ris_efficiency <= 1.0)) {
    throw std::invalid_argument("environment: ris_efficiency must be in (0, 1]");
  }
  if (!(responsivity > 0.0 && responsivity <= 1.0)) {
    throw std::invalid_argument("environment: responsivity must be in (0, 1]");
  }
  if (!(gain_threshold > 0.0 && gain_threshold < 1.0)) {
    throw std::invalid_argument("environment: gain_threshold must be in (0, 1)");
  }
}

EnvironmentParams make_environment(Weather weather, Turbulence turbulence,
                                   PointingJitter pointing) {
  EnvironmentParams env;
  env.attenuation_db_per_km =
      weather == Weather::sunny ? kSunnyAttenuation : kRainyAttenuation;
  env.cn2 = turbulence == Turbulence::moderate ? kModerateCn2 : kStrongCn2;
  if (pointing == PointingJitter::high) {
    env.sigma_theta = 3e-3;
    env.sigma_phi = 1e-3;
  }
  return env;
}

Weather parse_weather(std::string_view name) {
  if (name == "sunny") return Weather::sunny;
  if (name == "rainy") return Weather::rainy;
  throw std::invalid_argument("unknown weather preset '" + std::string(name) + "'");
}

Turbulence parse_turbulence(std::string_view name) {
  if (name == "moderate") return Turbulence::moderate;
  if (name == "strong") return Turbulence::strong;
  throw std::invalid_argument("unknown turbulence preset '" + std::string(name) +
                              "'");
}

PointingJitter parse_pointing(std::string_view name) {
  if (name == "low" || name == "low-pointing") return PointingJitter::low;
  if (name == "high" || name == "high-pointing") return PointingJitter::high;
  throw std::invalid_argument("unknown pointing preset '" + std::string(name) +
                              "'");
}

double atmospheric_loss(const EnvironmentParams& env, double d_e2e) {
  if (d_e2e < 0.0) throw std::invalid_argument("atmospheric_loss: negative distance");
  return std::pow(10.0, -env.attenuation_db_per_km * (d_e2e / 1000.0) / 10.0);
}

double rytov_variance(const EnvironmentParams& env, double d) {
  if (d < 0.0) throw std::invalid_argument("rytov_variance: negative distance");
  return 1.23 * env.cn2 * std::pow(env.wave_number(), 7.0 / 6.0) *
         std::pow(d, 11.0 / 6.0);
}

TurbulenceParams turbulence_params(double rytov_var) {
  if (!(rytov_var > 0.0)) {
    throw std::invalid_argument("turbulence_params: Rytov variance must be positive");
  }
  // sigma_R^(12/5) with sigma_R the square root of the Rytov variance.
  const double s125 = std::pow(rytov_var, 6.0 / 5.0);
  const double alpha_exp =
      0.49 * rytov_var / std::pow(1.0 + 1.11 * s125, 7.0 / 6.0);
  const double beta_exp =
      0.51 * rytov_var / std::pow(1.0 + 0.69 * s125, 5.0 / 6.0);
  return {1.0 / std::expm1(alpha_exp), 1.0 / std::expm1(beta_exp), rytov_var};
}

GammaGammaDensity::GammaGammaDensity(const TurbulenceParams& t)
    : order_(t.alpha - t.beta), ab_(t.alpha * t.beta) {
  if (!(t.alpha > 0.0 && t.beta > 0.0)) {
    throw std::invalid_argument("Gamma-Gamma shapes must be positive");
  }
  const double half_sum = 0.5 * (t.alpha + t.beta);
  log_norm_ = std::log(2.0) + half_sum * std::log(ab_) -
              specfun::log_gamma(t.alpha) - specfun::log_gamma(t.beta);
  power_ = half_sum - 1.0;
}

double GammaGammaDensity::log_pdf(double ha) const {
  if (!(ha > 0.0)) throw std::domain_error("gamma_gamma_pdf: gain must be positive");
  return log_norm_ + power_ * std::log(ha) +
         specfun::log_bessel_k(order_, 2.0 * std::sqrt(ab_ * ha));
}

double GammaGammaDensity::operator()(double ha) const {
  return std::exp(log_pdf(ha));
}

double gamma_gamma_log_pdf(double ha, const TurbulenceParams& t) {
  return GammaGammaDensity(t).log_pdf(ha);
}

double gamma_gamma_pdf(double ha, const TurbulenceParams& t) {
  return GammaGammaDensity(t)(ha);
}

PointingParams pointing_params(const EnvironmentParams& env, double d_sr,
                               double d_ri) {
  if (!(d_sr > 0.0) || !(d_ri > 0.0)) {
    throw std::invalid_argument("pointing_params: distances must be positive");
  }
  const double d = d_sr + d_ri;
  PointingParams p;
  p.wz = env.beam_divergence * d;
  p.v = std::sqrt(pi) * env.aperture_radius / (std::sqrt(2.0) * p.wz);
  const double erf_v = std::erf(p.v);
  p.a0 = erf_v * erf_v;
  p.wz_eq_sq =
      p.wz * p.wz * std::sqrt(pi) * erf_v / (2.0 * p.v * std::exp(-p.v * p.v));
  p.vartheta = p.wz_eq_sq / (4.0 * d * d * env.sigma_theta * env.sigma_theta +
                             16.0 * d_ri * d_ri * env.sigma_phi * env.sigma_phi);
  return p;
}

double pointing_pdf(double hg, const PointingParams& p) {
  if (!(hg >= 0.0 && hg <= p.a0)) {
    throw std::domain_error("pointing_pdf: gain outside [0, A0]");
  }
  return p.vartheta / std::pow(p.a0, p.vartheta) * std::pow(hg, p.vartheta - 1.0);
}

double pointing_cdf(double hg, const PointingParams& p) {
  if (hg <= 0.0) return 0.0;
  if (hg >= p.a0) return 1.0;
  return std::pow(hg / p.a0, p.vartheta);
}

double ChannelSampler::turbulence(const TurbulenceParams& t) {
  std::gamma_distribution<double> large(t.alpha, 1.0 / t.alpha);
  std::gamma_distribution<double> small(t.beta, 1.0 / t.beta);
  const double x = large(engine_);
  return x * small(engine_);
}

double ChannelSampler::pointing(const PointingParams& p) {
  // 1 - U lies in (0, 1], so the draw never collapses to exactly zero.
  const double u = 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  return p.a0 * std::pow(u, 1.0 / p.vartheta);
}

double ChannelSampler::gain(const EnvironmentParams& env,
                            const TurbulenceParams& t, const PointingParams& p,
                            double hp) {
  const double ha = turbulence(t);
  const double hg = pointing(p);
  return env.ris_efficiency * env.responsivity * hp * ha * hg;
}

double sample_channel_gain(const EnvironmentParams& env,
                           const TurbulenceParams& turb,
                           const PointingParams& pt, double hp,
                           std::uint64_t rng_seed) {
  ChannelSampler sampler(rng_seed);
  return sampler.gain(env, turb, pt, hp);
}

}  // namespace risqn
