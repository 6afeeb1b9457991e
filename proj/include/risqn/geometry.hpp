#pragma once

#include <cstddef>
#include <vector>

namespace risqn {

/// A point on the flat deployment grid, in meters. `h` is the height above
/// ground and must be nonnegative.
struct Point3D {
  double x = 0.0;
  double y = 0.0;
  double h = 0.0;

  friend bool operator==(const Point3D&, const Point3D&) = default;
};

/// Axis-aligned box of admissible RIS positions (closed on every face).
struct DeploymentRegion {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double h_min = 0.0;
  double h_max = 0.0;

  void validate() const;
};

/// Minimum RIS-to-user distance used by the feasibility checks.
inline constexpr double kMinRisUserSeparation = 20.0;

/// Star network: one QBS, its users, and the RIS that relays every link.
struct NetworkLayout {
  Point3D qbs;
  std::vector<Point3D> users;
  Point3D ris;

  void validate() const;
};

/// Lengths of the two legs of a relayed link.
struct LinkGeometry {
  double d_sr = 0.0;  // QBS -> RIS
  double d_ri = 0.0;  // RIS -> user

  double e2e() const { return d_sr + d_ri; }
};

double distance(const Point3D& a, const Point3D& b);

LinkGeometry link_geometry(const Point3D& qbs, const Point3D& ris,
                           const Point3D& user);
LinkGeometry link_geometry(const NetworkLayout& layout, std::size_t user_index);

/// QBS -> RIS -> user path length. Throws std::out_of_range on a bad index.
double e2e_distance(const NetworkLayout& layout, std::size_t user_index);

bool region_contains(const DeploymentRegion& region, const Point3D& p);
Point3D clamp_to_region(const DeploymentRegion& region, const Point3D& p);

/// True when the RIS keeps at least `min_separation` meters from every user.
bool ris_separation_ok(const Point3D& ris, const std::vector<Point3D>& users,
                       double min_separation = kMinRisUserSeparation);

/// The 400 m x 400 m box used by the default scenarios, RIS height 35-90 m.
DeploymentRegion default_region();

}  // namespace risqn
