#include "risqn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace risqn {

void DeploymentRegion::validate() const {
  if (!(x_min <= x_max && y_min <= y_max && h_min <= h_max)) {
    throw std::invalid_argument("deployment region has min > max on some axis");
  }
  if (h_min < 0.0) {
    throw std::invalid_argument("deployment region extends below ground");
  }
}

void NetworkLayout::validate() const {
  if (users.empty()) {
    throw std::invalid_argument("network layout has no users");
  }
  auto check = [](const Point3D& p, const char* what) {
    if (!(p.h >= 0.0)) {
      throw std::invalid_argument(std::string(what) + " has negative height");
    }
  };
  check(qbs, "QBS");
  check(ris, "RIS");
  for (const auto& u : users) check(u, "user");
}

double distance(const Point3D& a, const Point3D& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.h - b.h);
}

LinkGeometry link_geometry(const Point3D& qbs, const Point3D& ris,
                           const Point3D& user) {
  return {distance(qbs, ris), distance(ris, user)};
}

LinkGeometry link_geometry(const NetworkLayout& layout,
                           std::size_t user_index) {
  if (user_index >= layout.users.size()) {
    throw std::out_of_range("user index " + std::to_string(user_index) +
                            " out of range");
  }
  return link_geometry(layout.qbs, layout.ris, layout.users[user_index]);
}

double e2e_distance(const NetworkLayout& layout, std::size_t user_index) {
  return link_geometry(layout, user_index).e2e();
}

bool region_contains(const DeploymentRegion& region, const Point3D& p) {
  return region.x_min <= p.x && p.x <= region.x_max &&  //
         region.y_min <= p.y && p.y <= region.y_max &&  //
         region.h_min <= p.h && p.h <= region.h_max;
}

Point3D clamp_to_region(const DeploymentRegion& region, const Point3D& p) {
  return {std::clamp(p.x, region.x_min, region.x_max),
          std::clamp(p.y, region.y_min, region.y_max),
          std::clamp(p.h, region.h_min, region.h_max)};
}

bool ris_separation_ok(const Point3D& ris, const std::vector<Point3D>& users,
                       double min_separation) {
  return std::all_of(users.begin(), users.end(), [&](const Point3D& u) {
    return distance(ris, u) >= min_separation;
  });
}

DeploymentRegion default_region() {
  return {50.0, 450.0, 0.0, 400.0, 35.0, 90.0};
}

}  // namespace risqn
