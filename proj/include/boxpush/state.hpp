#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "boxpush/geometry.hpp"

namespace boxpush {

constexpr int kNumGoalCells = 32;      // 5 bits of goal bearing
constexpr int kNumSectors = 8;         // 8 obstacle sector bits
constexpr int kNumStates = kNumGoalCells * 256;  // 8192
constexpr int kNumActions = 6;

/// Discrete state index: goal_bits * 256 + obstacle_bits, in [0, 8191].
struct StateId {
  int value = 0;
  bool operator==(const StateId&) const = default;
};

/// Quantizes a goal bearing in [0, 360) into one of 32 cells of 11.25 deg.
inline int encode_goal_bits(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg < 360.0)) {
    throw std::invalid_argument("encode_goal_bits: theta must be in [0, 360)");
  }
  int cell = static_cast<int>(std::floor(theta_deg / (360.0 / kNumGoalCells)));
  if (cell >= kNumGoalCells) cell = kNumGoalCells - 1;  // guard fp edge
  return cell;
}

/// One bit per 45-degree world-frame sector around the box center; sector 0
/// (bearings [0, 45)) maps to the most significant bit, sectors proceed CCW
/// toward the LSB. An obstacle registers when its center is within
/// detection_range (optionally inflated by the obstacle radius).
inline int encode_obstacle_bits(const BoxPose& pose,
                                const std::vector<Obstacle>& obstacles,
                                double detection_range,
                                bool range_includes_radius = false) {
  int bits = 0;
  for (const auto& obs : obstacles) {
    const Vec2 d = obs.center - pose.center;
    const double dist = d.norm();
    const double range =
        range_includes_radius ? detection_range + obs.radius : detection_range;
    if (dist > range || (d.x == 0.0 && d.y == 0.0)) continue;
    const double bearing = normalize_angle_deg(rad_to_deg(std::atan2(d.y, d.x)));
    int sector = static_cast<int>(std::floor(bearing / 45.0));
    if (sector >= kNumSectors) sector = kNumSectors - 1;
    bits |= 1 << (kNumSectors - 1 - sector);
  }
  return bits;
}

inline StateId encode_state(const BoxPose& pose, const Goal& goal,
                            const std::vector<Obstacle>& obstacles,
                            double detection_range,
                            bool range_includes_radius = false) {
  const int goal_bits = encode_goal_bits(goal_angle(pose, goal));
  const int obstacle_bits = encode_obstacle_bits(pose, obstacles, detection_range,
                                                 range_includes_radius);
  return StateId{goal_bits * 256 + obstacle_bits};
}

}  // namespace boxpush
