#include "risqn/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace risqn {

namespace pt = boost::property_tree;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"environment",
       {"weather", "turbulence", "pointing", "wavelength", "attenuation_db_per_km", "cn2",
        "aperture_radius", "beam_divergence", "sigma_theta", "sigma_phi", "ris_efficiency",
        "responsivity", "gain_threshold"}},
      {"memory", {"capacity", "coherence_time", "processing_time"}},
      {"network",
       {"qbs", "x_min", "x_max", "y_min", "y_max", "h_min", "h_max", "fairness_threshold",
        "min_separation", "rytov_distance"}},
      {"users",
       {"count", "positions", "weights", "min_rate", "min_fidelity", "min_fidelity_low",
        "min_fidelity_high", "x_mean", "x_stddev", "x_min", "x_max", "y_mean", "y_stddev",
        "y_min", "y_max", "height"}},
      {"optimizer",
       {"framework", "energy", "t0", "t_min", "cooling", "iters_per_temp", "step_pos",
        "step_rate", "init_restarts"}},
      {"quadrature", {"relative_tolerance", "absolute_tolerance", "max_subdivisions"}},
      {"run", {"seed", "reps", "output"}},
  };
  return keys;
}

void reject_unknown(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = known_keys().find(section);
    if (it == known_keys().end() || body.empty()) {
      throw std::invalid_argument("unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        throw std::invalid_argument("unknown config key " + section + "." + key);
      }
    }
  }
}

class Reader {
 public:
  explicit Reader(const pt::ptree& t) : tree_(t) {}

  void number(const char* path, double& out) const {
    if (auto v = tree_.get_optional<std::string>(path)) out = to_double(*v);
  }
  template <typename Int>
  void integer(const char* path, Int& out) const {
    if (auto v = tree_.get_optional<std::string>(path)) {
      const std::string_view s = trim(*v);
      Int parsed{};
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), parsed);
      if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw std::invalid_argument(std::string(path) + ": not an integer");
      }
      out = parsed;
    }
  }
  void text(const char* path, std::string& out) const {
    if (auto v = tree_.get_optional<std::string>(path)) out = std::string(trim(*v));
  }
  bool has(const char* path) const { return tree_.get_optional<std::string>(path).has_value(); }

 private:
  const pt::ptree& tree_;
};

}  // namespace

Point3D parse_point(std::string_view text) {
  const std::vector<double> v = parse_numbers(text);
  if (v.size() != 3) throw std::invalid_argument("a point needs three coordinates x,y,h");
  return {v[0], v[1], v[2]};
}

std::vector<Point3D> parse_points(std::string_view text) {
  std::vector<Point3D> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    const std::string_view item = trim(text.substr(start, end - start));
    if (!item.empty()) out.push_back(parse_point(item));
    start = end + 1;
  }
  return out;
}

std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    out.push_back(to_double(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

void ScenarioConfig::validate() const {
  env.validate();
  mem.validate();
  region.validate();
  sa.validate();
  quadrature.validate();
  placement.x.validate();
  placement.y.validate();
  if (users.empty() && n_users == 0) throw std::invalid_argument("config: no users");
  const std::size_t n = users.empty() ? n_users : users.size();
  if (!weights.empty() && weights.size() != n) {
    throw std::invalid_argument("config: one weight per user is required");
  }
  if (!(min_fidelity_low <= min_fidelity_high && min_fidelity_low >= 0.0 &&
        min_fidelity_high < 1.0)) {
    throw std::invalid_argument("config: minimum fidelity bounds must satisfy 0 <= low <= high < 1");
  }
  if (!(min_rate >= 0.0)) throw std::invalid_argument("config: min_rate must be >= 0");
  if (reps < 1) throw std::invalid_argument("config: reps must be >= 1");
}

ScenarioConfig parse_config(std::string_view text) {
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  reject_unknown(tree);
  const Reader r(tree);
  ScenarioConfig c;

  r.text("environment.weather", c.weather);
  r.text("environment.turbulence", c.turbulence);
  r.text("environment.pointing", c.pointing);
  c.env = make_environment(parse_weather(c.weather), parse_turbulence(c.turbulence),
                           parse_pointing(c.pointing));
  r.number("environment.wavelength", c.env.wavelength);
  r.number("environment.attenuation_db_per_km", c.env.attenuation_db_per_km);
  r.number("environment.cn2", c.env.cn2);
  r.number("environment.aperture_radius", c.env.aperture_radius);
  r.number("environment.beam_divergence", c.env.beam_divergence);
  r.number("environment.sigma_theta", c.env.sigma_theta);
  r.number("environment.sigma_phi", c.env.sigma_phi);
  r.number("environment.ris_efficiency", c.env.ris_efficiency);
  r.number("environment.responsivity", c.env.responsivity);
  r.number("environment.gain_threshold", c.env.gain_threshold);

  r.number("memory.capacity", c.mem.capacity);
  r.number("memory.coherence_time", c.mem.coherence_time);
  r.number("memory.processing_time", c.mem.processing_time);

  if (auto q = tree.get_optional<std::string>("network.qbs")) c.qbs = parse_point(*q);
  r.number("network.x_min", c.region.x_min);
  r.number("network.x_max", c.region.x_max);
  r.number("network.y_min", c.region.y_min);
  r.number("network.y_max", c.region.y_max);
  r.number("network.h_min", c.region.h_min);
  r.number("network.h_max", c.region.h_max);
  r.number("network.fairness_threshold", c.fairness_threshold);
  r.number("network.min_separation", c.min_separation);
  std::string rytov;
  r.text("network.rytov_distance", rytov);
  if (rytov == "e2e") {
    c.phase_noise_distance = RytovDistance::e2e;
  } else if (!rytov.empty() && rytov != "ris-user") {
    throw std::invalid_argument("network.rytov_distance must be e2e or ris-user");
  }

  if (auto p = tree.get_optional<std::string>("users.positions")) c.users = parse_points(*p);
  r.integer("users.count", c.n_users);
  if (auto w = tree.get_optional<std::string>("users.weights")) c.weights = parse_numbers(*w);
  r.number("users.min_rate", c.min_rate);
  if (r.has("users.min_fidelity")) {
    r.number("users.min_fidelity", c.min_fidelity_low);
    c.min_fidelity_high = c.min_fidelity_low;
  }
  r.number("users.min_fidelity_low", c.min_fidelity_low);
  r.number("users.min_fidelity_high", c.min_fidelity_high);
  r.number("users.x_mean", c.placement.x.mean);
  r.number("users.x_stddev", c.placement.x.stddev);
  r.number("users.x_min", c.placement.x.lo);
  r.number("users.x_max", c.placement.x.hi);
  r.number("users.y_mean", c.placement.y.mean);
  r.number("users.y_stddev", c.placement.y.stddev);
  r.number("users.y_min", c.placement.y.lo);
  r.number("users.y_max", c.placement.y.hi);
  r.number("users.height", c.placement.height);

  std::string name;
  r.text("optimizer.framework", name);
  if (!name.empty()) c.framework = parse_framework(name);
  name.clear();
  r.text("optimizer.energy", name);
  if (!name.empty()) c.sa.energy = parse_energy(name);
  r.number("optimizer.t0", c.sa.t0);
  r.number("optimizer.t_min", c.sa.t_min);
  r.number("optimizer.cooling", c.sa.cooling);
  r.integer("optimizer.iters_per_temp", c.sa.iters_per_temp);
  r.number("optimizer.step_pos", c.sa.neighbor_step_pos);
  r.number("optimizer.step_rate", c.sa.neighbor_step_rate);
  r.integer("optimizer.init_restarts", c.sa.init_restarts);

  r.number("quadrature.relative_tolerance", c.quadrature.relative_tolerance);
  r.number("quadrature.absolute_tolerance", c.quadrature.absolute_tolerance);
  r.integer("quadrature.max_subdivisions", c.quadrature.max_subdivisions);

  r.integer("run.seed", c.seed);
  r.integer("run.reps", c.reps);
  r.text("run.output", c.output);
  c.sa.seed = c.seed;

  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ProblemInstance resolve_instance(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  ProblemInstance inst;
  inst.qbs = cfg.qbs;
  inst.region = cfg.region;
  inst.env = cfg.env;
  inst.mem = cfg.mem;
  inst.fairness_threshold = cfg.fairness_threshold;
  inst.min_separation = cfg.min_separation;
  inst.phase_noise_distance = cfg.phase_noise_distance;
  inst.quadrature = cfg.quadrature;

  // Positions and fidelity demands come from separate streams, so a fixed
  // layout does not shift the fidelity draws.
  inst.users = cfg.users.empty()
                   ? sample_user_layout(cfg.placement, cfg.n_users, derive_seed(seed, 0))
                   : cfg.users;
  const std::size_t n = inst.users.size();
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::uniform_real_distribution<double> fid(cfg.min_fidelity_low, cfg.min_fidelity_high);
  inst.demands.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    UserDemand& d = inst.demands[i];
    d.weight = cfg.weights.empty() ? 1.0 / static_cast<double>(n) : cfg.weights[i];
    d.min_rate = cfg.min_rate;
    d.min_fidelity = cfg.min_fidelity_low == cfg.min_fidelity_high ? cfg.min_fidelity_low
                                                                     : fid(rng);
  }
  inst.validate();
  return inst;
}

}  // namespace risqn
