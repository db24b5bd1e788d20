#pragma once
#include <cmath>
#include <stdexcept>

namespace jetpinn {

struct SpaceTimePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

// Immersed-disk geometry: box [0,3]^2 with a circular interface; subdomain 2
// is the open disk, subdomain 1 the box minus the closed disk. The outer box
// boundary belongs entirely to subdomain 1.
struct Geometry {
  double box_lo = 0.0;
  double box_hi = 3.0;
  double cx = 1.5;
  double cy = 1.5;
  double radius = 1.0;
  double t_end = 1.0;

  double circle_dist2(double x, double y) const {
    const double dx = x - cx, dy = y - cy;
    return dx * dx + dy * dy;
  }
};

inline constexpr double kInterfaceTol = 1e-12;

enum class Classify { Subdomain1 = 1, Subdomain2 = 2, OnInterface = 0 };

inline Classify classify(const Geometry& geom, const SpaceTimePoint& p) {
  const double d2 = geom.circle_dist2(p.x, p.y);
  const double r2 = geom.radius * geom.radius;
  if (std::abs(d2 - r2) < kInterfaceTol) return Classify::OnInterface;
  return d2 < r2 ? Classify::Subdomain2 : Classify::Subdomain1;
}

// Unit normal on the interface pointing from subdomain 1 into subdomain 2,
// i.e. toward the disk center.
inline void interface_normal(const Geometry& geom, double x, double y, double& nx, double& ny) {
  const double d2 = geom.circle_dist2(x, y);
  const double r2 = geom.radius * geom.radius;
  if (std::abs(d2 - r2) > 1e-9) throw std::invalid_argument("interface_normal: point not on interface");
  const double d = std::sqrt(d2);
  nx = (geom.cx - x) / d;
  ny = (geom.cy - y) / d;
}

}  // namespace jetpinn
