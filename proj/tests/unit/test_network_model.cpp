#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "risqn/link_success.hpp"
#include "risqn/network_model.hpp"

using namespace risqn;
using doctest::Approx;

namespace {

ProblemInstance three_users(std::vector<double> weights = {1.0 / 3, 1.0 / 3, 1.0 / 3}) {
  ProblemInstance inst;
  inst.users = {{350, 0, 10}, {400, 0, 10}, {450, 0, 10}};
  for (double w : weights) inst.demands.push_back({w, 1.0, 0.5});
  return inst;
}

}  // namespace

TEST_CASE("Jain's index") {
  CHECK(jfi(std::vector<double>{3, 3, 3}) == Approx(1.0));
  CHECK(jfi(std::vector<double>{0, 5, 0, 0}) == Approx(0.25));
  CHECK(jfi(std::vector<double>{2, 1, 1}) == Approx(16.0 / 18.0));
  CHECK_THROWS_AS(jfi(std::vector<double>{0, 0}), std::invalid_argument);
}

TEST_CASE("weighted fairness index") {
  const std::vector<double> w{0.1, 0.3, 0.6};
  CHECK(wfi(std::vector<double>{1, 1, 1}, w) == Approx(0.6));
  CHECK(wfi(std::vector<double>{1, 3, 6}, w) == Approx(1.0));
  CHECK(wfi(std::vector<double>{4, 4, 4}, std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}) == Approx(1.0));

  const std::vector<double> r{5, 1, 2.5, 7};
  const std::vector<double> u(4, 0.25);
  CHECK(wfi(r, u) == Approx(jfi(r)).epsilon(1e-15));
  CHECK(wfi(r, std::vector<double>{2, 2, 2, 2}) == Approx(jfi(r)).epsilon(1e-15));

  CHECK_THROWS_AS(wfi(std::vector<double>{1, 2}, w), std::invalid_argument);
  CHECK_THROWS_AS(wfi(std::vector<double>{0, 0, 0}, w), std::invalid_argument);
  CHECK_THROWS_AS(wfi(std::vector<double>{1, 1, 1}, std::vector<double>{1, 0, 1}), std::invalid_argument);
}

TEST_CASE("weighted fairness index stays in (0, 1]") {
  const std::vector<double> w{0.2, 0.5, 0.3};
  for (double a : {0.01, 1.0, 40.0})
    for (double b : {0.0, 2.0, 9.0}) {
      const double v = wfi(std::vector<double>{a, b, 3.0}, w);
      CHECK(v > 0.0);
      CHECK(v <= 1.0 + 1e-15);
    }
}

TEST_CASE("evaluation of a candidate") {
  const ProblemInstance inst = three_users();
  const std::vector<double> r{2e5, 3e5, 4e5};
  const AllocationSolution s = evaluate(inst, {200, 0, 60}, r);
  REQUIRE(s.size() == 3);
  double obj = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(s.r_e2e[i] == Approx(s.p_succ[i] * r[i]));
    CHECK(s.fidelity[i] > 0.25);
    CHECK(s.fidelity[i] < 1.0);
    obj += inst.demands[i].weight * s.r_e2e[i];
  }
  CHECK(s.objective == Approx(obj).epsilon(1e-15));
  CHECK(s.p_succ[0] > s.p_succ[2]);

  const AllocationSolution again = evaluate(inst, {200, 0, 60}, r);
  CHECK(again.r_e2e == s.r_e2e);
  CHECK(again.fidelity == s.fidelity);

  std::vector<double> scaled = r;
  for (double& x : scaled) x *= 2.5;
  CHECK(evaluate(inst, {200, 0, 60}, scaled).wfi == Approx(s.wfi).epsilon(1e-13));
  CHECK(evaluate(inst, {200, 0, 60}, scaled).fidelity[0] < s.fidelity[0]);
}

TEST_CASE("delivered rates follow the Monte Carlo success probability") {
  ProblemInstance inst;
  inst.users = {{300, 50, 10}, {420, 150, 10}};
  inst.demands = {{0.5, 1.0, 0.5}, {0.5, 1.0, 0.5}};
  const Point3D ris{200, 100, 50};
  const std::vector<double> r{1e5, 6e5};
  const AllocationSolution s = evaluate(inst, ris, r);
  for (std::size_t i = 0; i < 2; ++i) {
    const McEstimate mc =
        prob_success_mc(build_link_budget(inst.env, link_geometry(inst.qbs, ris, inst.users[i])), 200000, 17 + i);
    CHECK(std::abs(s.r_e2e[i] - mc.probability * r[i]) <= 3.0 * mc.std_error * r[i]);
  }
}

TEST_CASE("a single user is always perfectly fair") {
  ProblemInstance inst;
  inst.users = {{400, 100, 10}};
  inst.demands = {{1.0, 1.0, 0.5}};
  for (double rate : {1e3, 5e4, 1e6}) CHECK(evaluate(inst, {250, 80, 50}, std::vector<double>{rate}).wfi == Approx(1.0));
}

TEST_CASE("constraint flags") {
  ProblemInstance inst = three_users();
  inst.mem.capacity = 6e5;
  const AllocationSolution at_cap = evaluate(inst, {200, 0, 60}, std::vector<double>{2e5, 2e5, 2e5});
  CHECK(at_cap.flags.memory);
  const AllocationSolution over = evaluate(inst, {200, 0, 60}, std::vector<double>{2e5, 2e5, 2.1e5});
  CHECK_FALSE(over.flags.memory);
  CHECK_FALSE(over.feasible);

  inst = three_users();
  const std::vector<double> skewed{1e3, 1e3, 1e6};
  CHECK_FALSE(evaluate(inst, {200, 0, 60}, skewed).flags.fairness);
  inst.fairness_threshold = 0.0;
  CHECK(evaluate(inst, {200, 0, 60}, skewed).flags.fairness);

  const AllocationSolution outside = evaluate(inst, {20, 0, 60}, skewed);
  CHECK_FALSE(outside.flags.region);
  const AllocationSolution close = evaluate(inst, {400, 0, 25}, skewed);
  CHECK_FALSE(close.flags.separation);

  const AllocationSolution bad_rate = evaluate(inst, {200, 0, 60}, std::vector<double>{500.0, 1e4, 1e4});
  CHECK_FALSE(bad_rate.flags.rate_domain);
  CHECK_FALSE(bad_rate.feasible);

  ConstraintSet relaxed;
  relaxed.fairness = false;
  FeasibilityFlags f;
  f.memory = f.min_rate = f.fidelity = f.region = f.separation = f.rate_domain = true;
  CHECK(f.satisfies(relaxed));
  CHECK_FALSE(f.all());
}

TEST_CASE("strong turbulence at 450 m breaks a 0.7 fidelity demand") {
  ProblemInstance inst;
  inst.env = make_environment(Weather::sunny, Turbulence::strong);
  inst.users = {{450, 0, 10}};
  inst.demands = {{1.0, 1.0, 0.7}};
  inst.fairness_threshold = 0.0;

  const Point3D far_ris{50, 200, 35};
  REQUIRE(distance(far_ris, inst.users[0]) == Approx(450.0).epsilon(0.01));
  const AllocationSolution s = evaluate(inst, far_ris, std::vector<double>{kRateMin});
  CHECK_FALSE(s.flags.fidelity);

  inst.phase_noise_distance = RytovDistance::e2e;
  for (const Point3D ris : {Point3D{200, 0, 60}, Point3D{400, 0, 40}}) {
    CHECK_FALSE(evaluate(inst, ris, std::vector<double>{kRateMin}).flags.fidelity);
  }
}

TEST_CASE("fidelity caps on the initial rate") {
  const ProblemInstance inst = three_users();
  const auto ch = channel_state(inst, {250, 50, 60});
  for (const auto& c : ch) {
    const double cap = max_rate_for_fidelity(c, 0.8);
    if (cap < 0.0) continue;
    CHECK(delivered_fidelity(c, cap) >= 0.8);
    if (cap < kRateMax) CHECK(delivered_fidelity(c, std::min(kRateMax, cap * 1.001)) < 0.8);
  }
  CHECK(max_rate_for_fidelity(ch[0], 0.999) < 0.0);
}

TEST_CASE("instance validation") {
  ProblemInstance inst = three_users();
  inst.demands.pop_back();
  CHECK_THROWS_AS(inst.validate(), std::invalid_argument);
  CHECK_THROWS_AS((UserDemand{0.0, 1.0, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((UserDemand{1.0, 1.0, 1.0}.validate()), std::invalid_argument);
}
