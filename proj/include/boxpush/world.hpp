#pragma once

#include <vector>

#include "boxpush/actions.hpp"
#include "boxpush/geometry.hpp"
#include "boxpush/reward.hpp"
#include "boxpush/state.hpp"

namespace boxpush {

/// Axis-aligned rectangle obstacles may be placed in.
struct Region {
  double x_min = 100.0;
  double x_max = 700.0;
  double y_min = 100.0;
  double y_max = 600.0;
};

struct Arena {
  double width = 1000.0;
  double height = 700.0;
  Region obstacle_region;
  double detection_range = 200.0;
  BoxPose box_start{{0.0, 0.0}, 0.0};
  double translation_step = 30.0;  // l
  double rotation_step = 5.0;      // degrees per rotation action
  bool range_includes_radius = false;
};

/// One applied action: the (s, a, r, s') tuple plus the poses behind it.
struct Transition {
  StateId state_before;
  Action action = Action::TranslateForward;
  StateId state_after;
  RewardParts reward;
  bool collided = false;
  BoxPose pose_before;
  BoxPose pose_after;
};

/// Applies one action to the box. A candidate pose that intersects any
/// obstacle is reverted, leaving the box exactly where it was, and the
/// collision penalty is charged.
inline Transition step(const BoxPose& pose, const BoxShape& shape,
                       const Goal& goal, const std::vector<Obstacle>& obstacles,
                       const Arena& arena, Action action,
                       const Hyperparams& hp) {
  Transition t;
  t.pose_before = pose;
  t.action = action;
  t.state_before = encode_state(pose, goal, obstacles, arena.detection_range,
                                arena.range_includes_radius);

  const BoxPose candidate =
      is_translation(action)
          ? translate_box(pose, action, arena.translation_step)
          : rotate_box(pose, action, arena.rotation_step);

  if (collides(candidate, shape, obstacles)) {
    t.collided = true;
    t.pose_after = pose;
  } else {
    t.collided = false;
    t.pose_after = candidate;
  }
  t.reward = compute_reward(t.pose_before, t.pose_after, goal, t.collided, hp);
  t.state_after = encode_state(t.pose_after, goal, obstacles,
                               arena.detection_range,
                               arena.range_includes_radius);
  return t;
}

}  // namespace boxpush
