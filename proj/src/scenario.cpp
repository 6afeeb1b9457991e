#include "risqn/scenario.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace risqn {

void TruncatedNormal::validate() const {
  if (!(stddev >= 0.0)) throw std::invalid_argument("truncated normal: stddev < 0");
  if (!(lo <= hi)) throw std::invalid_argument("truncated normal: lo > hi");
  if (stddev == 0.0 && !(mean >= lo && mean <= hi)) {
    throw std::invalid_argument("truncated normal: degenerate mean outside bounds");
  }
}

double TruncatedNormal::analytic_mean() const {
  validate();
  if (stddev == 0.0) return mean;
  const double a = (lo - mean) / stddev;
  const double b = (hi - mean) / stddev;
  const auto pdf = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); };
  const auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); };
  return mean + stddev * (pdf(a) - pdf(b)) / (cdf(b) - cdf(a));
}

double TruncatedNormal::sample(std::mt19937_64& rng) const {
  if (stddev == 0.0) return mean;
  std::normal_distribution<double> normal(mean, stddev);
  for (int tries = 0; tries < 1'000'000; ++tries) {
    const double v = normal(rng);
    if (v >= lo && v <= hi) return v;
  }
  throw std::runtime_error("truncated normal: acceptance region has negligible mass");
}

std::vector<Point3D> sample_user_layout(const UserPlacement& placement,
                                        std::size_t n_users, std::uint64_t seed) {
  if (n_users == 0) throw std::invalid_argument("sample_user_layout: need at least one user");
  placement.x.validate();
  placement.y.validate();
  std::mt19937_64 rng(seed);
  std::vector<Point3D> users;
  users.reserve(n_users);
  for (std::size_t i = 0; i < n_users; ++i) {
    const double x = placement.x.sample(rng);
    const double y = placement.y.sample(rng);
    users.push_back({x, y, placement.height});
  }
  return users;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (rep + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Point3D> clustered_users() {
  return {{350.0, 0.0, 10.0}, {400.0, 0.0, 10.0}, {450.0, 0.0, 10.0}};
}

std::vector<Point3D> spread_users() {
  return {{200.0, 0.0, 10.0}, {400.0, 0.0, 10.0}, {450.0, 0.0, 10.0}};
}

}  // namespace risqn
