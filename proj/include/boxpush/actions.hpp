#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "boxpush/geometry.hpp"

namespace boxpush {

/// The six box actions. Ordinals index Q-table columns.
enum class Action : int {
  TranslateForward = 0,
  TranslateBackward = 1,
  TranslateLeft = 2,
  TranslateRight = 3,
  RotateCCW = 4,
  RotateCW = 5,
};

constexpr std::array<Action, 6> kAllActions = {
    Action::TranslateForward, Action::TranslateBackward, Action::TranslateLeft,
    Action::TranslateRight,   Action::RotateCCW,         Action::RotateCW};

inline int action_ordinal(Action a) { return static_cast<int>(a); }

inline bool is_translation(Action a) {
  return action_ordinal(a) <= action_ordinal(Action::TranslateRight);
}

inline bool is_rotation(Action a) { return !is_translation(a); }

inline const char* action_name(Action a) {
  switch (a) {
    case Action::TranslateForward: return "forward";
    case Action::TranslateBackward: return "backward";
    case Action::TranslateLeft: return "left";
    case Action::TranslateRight: return "right";
    case Action::RotateCCW: return "rotate_ccw";
    case Action::RotateCW: return "rotate_cw";
  }
  return "?";
}

/// Displaces the box center by exactly `step` along the heading (forward /
/// backward) or its 90-degree perpendicular (left / right); the orientation
/// is untouched. Unit direction (cos a, sin a) keeps the displacement norm
/// at `step` for every heading, including the vertical-slope case.
inline BoxPose translate_box(const BoxPose& pose, Action action, double step) {
  if (!is_translation(action)) {
    throw std::invalid_argument("translate_box: rotation action");
  }
  const double a = deg_to_rad(pose.angle_deg);
  const Vec2 heading{std::cos(a), std::sin(a)};
  const Vec2 perp{-std::sin(a), std::cos(a)};
  Vec2 dir;
  switch (action) {
    case Action::TranslateForward: dir = heading; break;
    case Action::TranslateBackward: dir = heading * -1.0; break;
    case Action::TranslateLeft: dir = perp; break;
    case Action::TranslateRight: dir = perp * -1.0; break;
    default: break;
  }
  return BoxPose{pose.center + dir * step, pose.angle_deg};
}

/// Rotates the box around its center by delta_rot degrees (CCW for action 5,
/// CW for action 6). The center never moves.
inline BoxPose rotate_box(const BoxPose& pose, Action action, double delta_rot) {
  if (!is_rotation(action)) {
    throw std::invalid_argument("rotate_box: translation action");
  }
  const double delta = action == Action::RotateCCW ? delta_rot : -delta_rot;
  return BoxPose{pose.center, normalize_angle_deg(pose.angle_deg + delta)};
}

}  // namespace boxpush
