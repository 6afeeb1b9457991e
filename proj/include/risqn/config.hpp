#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "risqn/entanglement.hpp"
#include "risqn/fso_channel.hpp"
#include "risqn/geometry.hpp"
#include "risqn/network_model.hpp"
#include "risqn/optimizer.hpp"
#include "risqn/scenario.hpp"
#include "risqn/specfun.hpp"

namespace risqn {

/// Everything needed to build problem instances and run the optimizer.
/// Parsed from an INI file with sections [environment], [memory], [network],
/// [users], [optimizer], [quadrature] and [run].
struct ScenarioConfig {
  std::string weather = "sunny";
  std::string turbulence = "moderate";
  std::string pointing = "low";
  EnvironmentParams env;  // presets applied, then explicit overrides
  MemoryParams mem;

  Point3D qbs{0.0, 0.0, 90.0};
  DeploymentRegion region = default_region();
  double fairness_threshold = 0.95;
  double min_separation = kMinRisUserSeparation;
  RytovDistance phase_noise_distance = RytovDistance::ris_user;

  std::vector<Point3D> users;  // explicit positions; empty means sampled
  std::size_t n_users = 3;
  UserPlacement placement;
  std::vector<double> weights;  // empty means 1/N each
  double min_rate = 1.0;
  double min_fidelity_low = 0.5;  // f_min ~ U(low, high); equal bounds fix it
  double min_fidelity_high = 0.7;

  SAConfig sa;
  Framework framework = Framework::proposed;
  specfun::QuadratureConfig quadrature;

  std::uint64_t seed = 1;
  int reps = 50;
  std::string output;

  void validate() const;
};

ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Builds one problem instance. Sampled quantities (user positions when none
/// are listed, per-user minimum fidelities) are drawn from `seed`.
ProblemInstance resolve_instance(const ScenarioConfig& cfg, std::uint64_t seed);

/// "x,y,h" triple.
Point3D parse_point(std::string_view text);
/// Semicolon-separated list of points.
std::vector<Point3D> parse_points(std::string_view text);
/// Comma-separated list of numbers.
std::vector<double> parse_numbers(std::string_view text);

}  // namespace risqn
