#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace risqn::specfun {

/// Gamma function. Requires x > 0.
double gamma_fn(double x);

/// log Gamma(x) for x > 0; thread-safe (does not touch `signgam`).
double log_gamma(double x);

double erf_fn(double x);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Modified Bessel function of the second kind K_nu(x) for real order and
/// x > 0. Overflows to +inf for very large orders at tiny x; use
/// log_bessel_k there.
double bessel_k(double nu, double x);

/// log K_nu(x), finite wherever K_nu(x) is positive and finite in log space.
double log_bessel_k(double nu, double x);

/// exp(x) * K_nu(x).
double bessel_k_scaled(double nu, double x);

struct QuadratureConfig {
  double relative_tolerance = 1e-9;
  double absolute_tolerance = 1e-12;
  int max_subdivisions = 200;

  void validate() const;
};

class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  int evaluations = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over [a, b].
/// `b` may be +infinity, handled with the map x = a + t / (1 - t).
/// Throws QuadratureError when the tolerance is not met within
/// cfg.max_subdivisions bisections or when f returns a non-finite value.
QuadratureResult integrate_detailed(const Integrand& f, double a, double b,
                                    const QuadratureConfig& cfg = {});

double integrate(const Integrand& f, double a, double b,
                 const QuadratureConfig& cfg = {});

}  // namespace risqn::specfun
