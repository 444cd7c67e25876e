#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace boxpush {

constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

/// Normalizes an angle in degrees into [0, 360).
inline double normalize_angle_deg(double deg) {
  double a = std::fmod(deg, 360.0);
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a = 0.0;
  return a;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }

  double norm() const { return std::hypot(x, y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Box center plus orientation. angle_deg stays in [0, 360).
struct BoxPose {
  Vec2 center;
  double angle_deg = 0.0;

  bool operator==(const BoxPose& o) const {
    return center == o.center && angle_deg == o.angle_deg;
  }
};

struct BoxShape {
  double length = 120.0;
  double width = 80.0;
};

struct Obstacle {
  Vec2 center;
  double radius = 10.0;
};

struct Goal {
  Vec2 center;
  double radius = 30.0;
};

/// Bearing from the box center to the goal center, CCW from the positive
/// x-axis, in [0, 360). Coincident centers degenerate to 0.
inline double goal_angle(const BoxPose& pose, const Goal& goal) {
  const Vec2 d = goal.center - pose.center;
  if (d.x == 0.0 && d.y == 0.0) return 0.0;
  return normalize_angle_deg(rad_to_deg(std::atan2(d.y, d.x)));
}

/// Oriented-rectangle vs disk intersection. The obstacle center is mapped
/// into the box frame and clamped to the rectangle; touching counts.
inline bool collides(const BoxPose& pose, const BoxShape& shape,
                     const Obstacle& obstacle) {
  const double a = deg_to_rad(pose.angle_deg);
  const double c = std::cos(a);
  const double s = std::sin(a);
  const Vec2 d = obstacle.center - pose.center;
  const double local_x = c * d.x + s * d.y;
  const double local_y = -s * d.x + c * d.y;
  const double hx = shape.length / 2.0;
  const double hy = shape.width / 2.0;
  const double cx = std::clamp(local_x, -hx, hx);
  const double cy = std::clamp(local_y, -hy, hy);
  const double dx = local_x - cx;
  const double dy = local_y - cy;
  return dx * dx + dy * dy <= obstacle.radius * obstacle.radius;
}

inline bool collides(const BoxPose& pose, const BoxShape& shape,
                     const std::vector<Obstacle>& obstacles) {
  for (const auto& obs : obstacles) {
    if (collides(pose, shape, obs)) return true;
  }
  return false;
}

inline bool goal_reached(const BoxPose& pose, const Goal& goal) {
  return distance(pose.center, goal.center) <= goal.radius;
}

}  // namespace boxpush
