#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "risqn/link_success.hpp"

using namespace risqn;
using doctest::Approx;

namespace {

double psucc(const EnvironmentParams& env, double d_sr, double d_ri) {
  return prob_success(build_link_budget(env, LinkGeometry{d_sr, d_ri}));
}

}  // namespace

TEST_CASE("link budget composition") {
  const EnvironmentParams env;
  const LinkBudget b = build_link_budget(env, LinkGeometry{250.0, 250.0});
  CHECK(b.hp == Approx(atmospheric_loss(env, 500.0)));
  CHECK(b.turb.rytov_var == Approx(rytov_variance(env, 500.0)));
  CHECK(b.pt.a0 == Approx(0.0370741293983656).epsilon(1e-12));
  CHECK(b.chi_th == Approx(0.05 / (0.97 * 0.95)));

  const NetworkLayout layout{{0, 0, 90}, {{400, 0, 10}}, {200, 100, 60}};
  const LinkBudget c = build_link_budget(env, layout, 0);
  CHECK(c.hp == Approx(atmospheric_loss(env, 454.73906820136155)).epsilon(1e-12));
}

TEST_CASE("success probability agrees with Monte Carlo") {
  const EnvironmentParams env;
  const LinkBudget b = build_link_budget(env, LinkGeometry{250.0, 250.0});
  const double p = prob_success(b);
  const McEstimate mc = prob_success_mc(b, 200000, 11);
  CHECK(p > 0.0);
  CHECK(p < 1.0);
  CHECK(mc.samples == 200000);
  CHECK(std::abs(p - mc.probability) <= 3.0 * mc.std_error);
}

TEST_CASE("success probability is a probability and falls with distance") {
  const EnvironmentParams env = make_environment(Weather::rainy);
  double prev = 1.0;
  for (double d = 50.0; d <= 500.0; d += 50.0) {
    const double p = psucc(env, d, d);
    CHECK(p >= 0.0);
    CHECK(p <= prev);
    prev = p;
  }
}

TEST_CASE("an unreachable threshold gives zero") {
  EnvironmentParams env;
  env.gain_threshold = 0.9;
  const LinkBudget b = build_link_budget(env, LinkGeometry{400.0, 400.0});
  CHECK(prob_success(b) < 1e-12);
  const McEstimate mc = prob_success_mc(b, 10000, 3);
  CHECK(mc.successes == 0);
  CHECK(mc.probability == 0.0);
  CHECK(mc.std_error > 0.0);
}

TEST_CASE("Monte Carlo estimates are reproducible") {
  const LinkBudget b = build_link_budget(EnvironmentParams{}, LinkGeometry{150.0, 300.0});
  const McEstimate x = prob_success_mc(b, 5000, 99);
  const McEstimate y = prob_success_mc(b, 5000, 99);
  CHECK(x.successes == y.successes);
  CHECK_THROWS_AS(prob_success_mc(b, 0, 1), std::invalid_argument);
}

TEST_CASE("tail cutoff bounds the Gamma-Gamma tail") {
  const TurbulenceParams t = turbulence_params(0.5);
  const double u = gamma_gamma_tail_cutoff(t, 1e-12);
  CHECK(u > 1.0);
  const double tail = specfun::integrate([&](double a) { return gamma_gamma_pdf(a, t); }, u,
                                         std::numeric_limits<double>::infinity());
  CHECK(tail < 1e-12);
  CHECK(gamma_gamma_tail_cutoff(t, 1e-6) < u);
}

TEST_CASE("delivered rate") {
  CHECK(e2e_rate(0.25, 4e5) == Approx(1e5));
  CHECK(e2e_rate(0.0, 1e6) == 0.0);
  CHECK_THROWS_AS(e2e_rate(1.5, 1e3), std::invalid_argument);
}
