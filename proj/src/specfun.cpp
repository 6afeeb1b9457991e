#include "risqn/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace risqn::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;
constexpr int kMaxSeriesIterations = 100000;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0)) {
    throw std::domain_error(std::string(fn) + ": argument must be positive");
  }
}

// Chebyshev evaluation on [-1, 1].
template <std::size_t N>
double chebev(const std::array<double, N>& c, double x) {
  double d = 0.0;
  double dd = 0.0;
  const double y2 = 2.0 * x;
  for (std::size_t j = N - 1; j > 0; --j) {
    const double sv = d;
    d = y2 * d - dd + c[j];
    dd = sv;
  }
  return x * d - dd + 0.5 * c[0];
}

// Gamma-function combinations used by Temme's series, |mu| <= 1/2:
//   gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu),  gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2
struct TemmeGammas {
  double gam1;
  double gam2;
  double gampl;  // 1 / G(1 + mu)
  double gammi;  // 1 / G(1 - mu)
};

TemmeGammas temme_gammas(double mu) {
  static constexpr std::array<double, 7> c1 = {
      -1.142022680371168e0, 6.5165112670737e-3, 3.087090173086e-4,
      -3.4706269649e-6,     6.9437664e-9,       3.67795e-11,
      -1.356e-13};
  static constexpr std::array<double, 8> c2 = {
      1.843740587300905e0, -7.68528408447867e-2, 1.2719271366546e-3,
      -4.9717367042e-6,    -3.31261198e-8,       2.423096e-10,
      -1.702e-13,          -1.49e-15};
  const double xx = 8.0 * mu * mu - 1.0;
  TemmeGammas g{};
  g.gam1 = chebev(c1, xx);
  g.gam2 = chebev(c2, xx);
  g.gampl = g.gam2 - mu * g.gam1;
  g.gammi = g.gam2 + mu * g.gam1;
  return g;
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, returned as mantissas with a
// shared log scale so that K = mantissa * exp(log_scale).
struct KPair {
  double k_mu;
  double k_mu1;
  double log_scale;
};

KPair bessel_k_fractional(double mu, double x) {
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  if (x < 2.0) {
    // Temme's series.
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(mu);
    double ff = fact * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxSeriesIterations; ++i) {
      const double fi = i;
      ff = (fi * ff + p + q) / (fi * fi - mu * mu);
      c *= d / fi;
      p /= fi - mu;
      q /= fi + mu;
      const double del = c * ff;
      sum += del;
      const double del1 = c * (p - fi * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxSeriesIterations) {
      throw std::runtime_error("bessel_k: Temme series failed to converge");
    }
    return {sum, sum1 * xi2, 0.0};
  }
  // Steed's continued fraction CF2, yielding exp(x) * K.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 1;
  for (; i <= kMaxSeriesIterations; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxSeriesIterations) {
    throw std::runtime_error("bessel_k: continued fraction failed to converge");
  }
  h = a1 * h;
  const double k_mu = std::sqrt(kPi / (2.0 * x)) / s;
  const double k_mu1 = k_mu * (mu + x + 0.5 - h) * xi;
  return {k_mu, k_mu1, -x};
}

// Upward recurrence K_{v+1} = K_{v-1} + (2v/x) K_v from the fractional part
// to the requested order, rescaling to stay inside double range.
KPair bessel_k_mantissa(double nu, double x) {
  nu = std::abs(nu);
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  KPair k = bessel_k_fractional(mu, x);
  const double xi2 = 2.0 / x;
  constexpr double kRescaleAt = 1e250;
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k.k_mu1 + k.k_mu;
    k.k_mu = k.k_mu1;
    k.k_mu1 = next;
    if (std::abs(k.k_mu1) > kRescaleAt) {
      k.k_mu /= kRescaleAt;
      k.k_mu1 /= kRescaleAt;
      k.log_scale += std::log(kRescaleAt);
    }
  }
  return k;
}

}  // namespace

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  return std::tgamma(x);
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double erf_fn(double x) { return std::erf(x); }

double gamma_p(double a, double x) {
  require_positive(a, "gamma_p");
  if (x < 0.0) throw std::domain_error("gamma_p: x must be nonnegative");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // Series representation.
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < kMaxSeriesIterations; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * kEps) {
        return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
      }
    }
    throw std::runtime_error("gamma_p: series failed to converge");
  }
  return 1.0 - gamma_q(a, x);
}

double gamma_q(double a, double x) {
  require_positive(a, "gamma_q");
  if (x < 0.0) throw std::domain_error("gamma_q: x must be nonnegative");
  if (x < a + 1.0) return 1.0 - gamma_p(a, x);
  // Continued fraction (modified Lentz).
  constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxSeriesIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
    }
  }
  throw std::runtime_error("gamma_q: continued fraction failed to converge");
}

double bessel_k(double nu, double x) {
  require_positive(x, "bessel_k");
  const KPair k = bessel_k_mantissa(nu, x);
  return k.k_mu * std::exp(k.log_scale);
}

double log_bessel_k(double nu, double x) {
  require_positive(x, "log_bessel_k");
  const KPair k = bessel_k_mantissa(nu, x);
  return std::log(k.k_mu) + k.log_scale;
}

double bessel_k_scaled(double nu, double x) {
  require_positive(x, "bessel_k_scaled");
  const KPair k = bessel_k_mantissa(nu, x);
  return k.k_mu * std::exp(k.log_scale + x);
}

}  // namespace risqn::specfun
