#pragma once

#include "boxpush/geometry.hpp"

namespace boxpush {

/// Fixed learning and reward parameters. Defaults follow the standard
/// configuration used throughout the experiments.
struct Hyperparams {
  double alpha = 0.3;    // learning rate
  double gamma = 0.4;    // discount
  double epsilon = 0.3;  // exploration probability
  double omega = 0.3;    // cooperative blend weight
  double c_d = 0.9;      // distance reward coefficient
  double w1 = 0.7;       // weight on distance reward
  double w2 = 0.05;      // weight on rotation reward
  double w3 = 0.25;      // weight on obstacle reward
};

struct RewardParts {
  double r_distance = 0.0;
  double r_rotation = 0.0;
  double r_obstacle = 0.0;
  double r_total = 0.0;
};

/// Distance shaping, rotation penalty, and collision penalty combined with
/// the configured weights. The rotation term cos(da) - 0.9 turns negative
/// past |da| = acos(0.9) ~ 25.8 degrees.
inline RewardParts compute_reward(const BoxPose& pose_before,
                                  const BoxPose& pose_after, const Goal& goal,
                                  bool collided, const Hyperparams& hp) {
  RewardParts r;
  const double d_old = distance(goal.center, pose_before.center);
  const double d_new = distance(goal.center, pose_after.center);
  r.r_distance = (d_old - d_new) * hp.c_d;
  r.r_rotation =
      std::cos(deg_to_rad(pose_after.angle_deg - pose_before.angle_deg)) - 0.9;
  r.r_obstacle = collided ? -9.0 : 1.0;
  r.r_total = hp.w1 * r.r_distance + hp.w2 * r.r_rotation + hp.w3 * r.r_obstacle;
  return r;
}

}  // namespace boxpush
