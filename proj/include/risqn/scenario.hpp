#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "risqn/geometry.hpp"

namespace risqn {

/// Normal(mean, stddev) restricted to [lo, hi], sampled by rejection.
struct TruncatedNormal {
  double mean = 0.0;
  double stddev = 1.0;
  double lo = 0.0;
  double hi = 0.0;

  void validate() const;
  double analytic_mean() const;
  double sample(std::mt19937_64& rng) const;
};

/// Ground users are scattered independently along x and y at a fixed height.
struct UserPlacement {
  TruncatedNormal x{250.0, 50.0, 50.0, 450.0};
  TruncatedNormal y{200.0, 50.0, 0.0, 400.0};
  double height = 10.0;
};

std::vector<Point3D> sample_user_layout(const UserPlacement& placement,
                                        std::size_t n_users, std::uint64_t seed);

/// Seed of repetition `rep` in a run seeded with `seed` (SplitMix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep);

/// The two fixed three-user layouts used for placement studies.
std::vector<Point3D> clustered_users();
std::vector<Point3D> spread_users();

}  // namespace risqn
