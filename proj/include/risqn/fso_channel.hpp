#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace risqn {

/// Optical, atmospheric and receiver constants of the FSO link. Defaults are
/// the sunny / moderate-turbulence / low-pointing-error setup.
struct EnvironmentParams {
  double wavelength = 1550e-9;          // m
  double attenuation_db_per_km = 0.43;  // dB/km
  double cn2 = 5e-14;                   // m^(-2/3)
  double aperture_radius = 0.55;        // m
  double beam_divergence = 8e-3;        // rad
  double sigma_theta = 1e-3;            // rad, transmitter jitter
  double sigma_phi = 0.25e-3;           // rad, RIS jitter
  double ris_efficiency = 0.97;
  double responsivity = 0.95;
  double gain_threshold = 0.05;

  double wave_number() const;
  void validate() const;
};

enum class Weather { sunny, rainy };
enum class Turbulence { moderate, strong };
enum class PointingJitter { low, high };

inline constexpr double kSunnyAttenuation = 0.43;  // dB/km
inline constexpr double kRainyAttenuation = 6.27;  // dB/km
inline constexpr double kModerateCn2 = 5e-14;
inline constexpr double kStrongCn2 = 1e-13;

EnvironmentParams make_environment(Weather weather = Weather::sunny,
                                   Turbulence turbulence = Turbulence::moderate,
                                   PointingJitter pointing = PointingJitter::low);

Weather parse_weather(std::string_view name);
Turbulence parse_turbulence(std::string_view name);
PointingJitter parse_pointing(std::string_view name);

/// Gamma-Gamma shape parameters and the Rytov variance they derive from.
struct TurbulenceParams {
  double alpha = 0.0;  // large-scale eddies
  double beta = 0.0;   // small-scale eddies
  double rytov_var = 0.0;
};

/// Pointing-error fading parameters; the gain h_g lives on [0, a0] with
/// CDF (h_g / a0)^vartheta.
struct PointingParams {
  double a0 = 0.0;
  double wz = 0.0;        // beam width at the receiver, m
  double wz_eq_sq = 0.0;  // equivalent beam width squared, m^2
  double v = 0.0;
  double vartheta = 0.0;
};

/// Deterministic path loss 10^(-kappa d / 10), d converted to km.
double atmospheric_loss(const EnvironmentParams& env, double d_e2e);

/// 1.23 Cn^2 k^(7/6) d^(11/6).
double rytov_variance(const EnvironmentParams& env, double d);

TurbulenceParams turbulence_params(double rytov_var);

/// Gamma-Gamma density with its normalization precomputed, for repeated
/// evaluation inside quadrature loops.
class GammaGammaDensity {
 public:
  explicit GammaGammaDensity(const TurbulenceParams& t);

  double log_pdf(double ha) const;
  double operator()(double ha) const;

 private:
  double order_;       // alpha - beta
  double log_norm_;    // log(2 (ab)^((a+b)/2) / (G(a) G(b)))
  double power_;       // (a+b)/2 - 1
  double ab_;
};

double gamma_gamma_pdf(double ha, const TurbulenceParams& t);
double gamma_gamma_log_pdf(double ha, const TurbulenceParams& t);

PointingParams pointing_params(const EnvironmentParams& env, double d_sr,
                               double d_ri);

double pointing_pdf(double hg, const PointingParams& p);
double pointing_cdf(double hg, const PointingParams& p);

/// Draws channel gains. Each sampler owns its stream; equal seeds give equal
/// sequences.
class ChannelSampler {
 public:
  explicit ChannelSampler(std::uint64_t seed) : engine_(seed) {}

  /// Unit-mean Gamma-Gamma draw as the product of two Gamma variates.
  double turbulence(const TurbulenceParams& t);
  /// Inverse-CDF draw a0 * U^(1/vartheta).
  double pointing(const PointingParams& p);
  /// h = ris_efficiency * responsivity * hp * ha * hg.
  double gain(const EnvironmentParams& env, const TurbulenceParams& t,
              const PointingParams& p, double hp);

 private:
  std::mt19937_64 engine_;
};

double sample_channel_gain(const EnvironmentParams& env,
                           const TurbulenceParams& turb,
                           const PointingParams& pt, double hp,
                           std::uint64_t rng_seed);

}  // namespace risqn
