#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "boxpush/experiment.hpp"

namespace boxpush {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
  if (pos != value.size()) {
    throw ConfigError("invalid number for '" + key + "': " + value);
  }
  return v;
}

inline std::uint64_t parse_u64(const std::string& key,
                               const std::string& value) {
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
}

inline int parse_int(const std::string& key, const std::string& value) {
  try {
    return std::stoi(value);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for '" + key + "': " + value);
  }
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("invalid bool for '" + key + "': " + value);
}

inline void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError("config field '" + field + "' " + what);
}

}  // namespace detail

inline AlgorithmMode parse_mode(const std::string& value) {
  for (AlgorithmMode m : kAllModes) {
    if (value == mode_name(m)) return m;
  }
  throw ConfigError("unknown mode '" + value +
                    "' (expected single|separate|shared|cooperative)");
}

/// Range checks mirrored from the type contracts. Throws ConfigError naming
/// the offending field.
inline void validate_config(const ExperimentConfig& cfg) {
  using detail::require;
  const Hyperparams& hp = cfg.hyperparams;
  require(hp.alpha >= 0.0 && hp.alpha <= 1.0, "alpha", "must be in [0, 1]");
  require(hp.gamma >= 0.0 && hp.gamma < 1.0, "gamma", "must be in [0, 1)");
  require(hp.epsilon >= 0.0 && hp.epsilon <= 1.0, "epsilon",
          "must be in [0, 1]");
  require(hp.omega >= 0.0 && hp.omega <= 1.0, "omega", "must be in [0, 1]");
  require(hp.c_d > 0.0, "c_d", "must be positive");
  require(hp.w1 >= 0.0, "w1", "must be non-negative");
  require(hp.w2 >= 0.0, "w2", "must be non-negative");
  require(hp.w3 >= 0.0, "w3", "must be non-negative");
  require(cfg.arena.width > 0.0, "arena_width", "must be positive");
  require(cfg.arena.height > 0.0, "arena_height", "must be positive");
  require(cfg.arena.detection_range > 0.0, "detection_range",
          "must be positive");
  require(cfg.arena.translation_step > 0.0, "translation_step",
          "must be positive");
  require(cfg.arena.rotation_step > 0.0 && cfg.arena.rotation_step < 90.0,
          "rotation_step", "must be in (0, 90)");
  const Region& r = cfg.arena.obstacle_region;
  require(r.x_min >= 0.0 && r.x_max <= cfg.arena.width && r.x_min < r.x_max,
          "obstacle_region_x", "must lie inside the arena");
  require(r.y_min >= 0.0 && r.y_max <= cfg.arena.height && r.y_min < r.y_max,
          "obstacle_region_y", "must lie inside the arena");
  require(cfg.shape.length > 0.0, "box_length", "must be positive");
  require(cfg.shape.width > 0.0, "box_width", "must be positive");
  require(cfg.goal.radius > 0.0, "goal_radius", "must be positive");
  require(cfg.obstacle_radius > 0.0, "obstacle_radius", "must be positive");
  require(cfg.obstacle_clearance >= 0.0, "obstacle_clearance",
          "must be non-negative");
  require(cfg.n_obstacles >= 0, "n_obstacles", "must be non-negative");
  require(cfg.max_iterations >= 1, "max_iterations", "must be >= 1");
  require(cfg.n_episodes >= 1, "n_episodes", "must be >= 1");
}

/// Parses flat `key = value` text (one pair per line, '#' comments).
/// Missing keys keep the built-in defaults.
inline ExperimentConfig parse_config(std::istream& in,
                                     const std::string& source_name = "config") {
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(source_name + ":" + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    using namespace detail;
    if (key == "arena_width") cfg.arena.width = parse_double(key, value);
    else if (key == "arena_height") cfg.arena.height = parse_double(key, value);
    else if (key == "obstacle_region_x_min") cfg.arena.obstacle_region.x_min = parse_double(key, value);
    else if (key == "obstacle_region_x_max") cfg.arena.obstacle_region.x_max = parse_double(key, value);
    else if (key == "obstacle_region_y_min") cfg.arena.obstacle_region.y_min = parse_double(key, value);
    else if (key == "obstacle_region_y_max") cfg.arena.obstacle_region.y_max = parse_double(key, value);
    else if (key == "detection_range") cfg.arena.detection_range = parse_double(key, value);
    else if (key == "box_start_x") cfg.arena.box_start.center.x = parse_double(key, value);
    else if (key == "box_start_y") cfg.arena.box_start.center.y = parse_double(key, value);
    else if (key == "box_start_angle") cfg.arena.box_start.angle_deg = normalize_angle_deg(parse_double(key, value));
    else if (key == "translation_step") cfg.arena.translation_step = parse_double(key, value);
    else if (key == "rotation_step") cfg.arena.rotation_step = parse_double(key, value);
    else if (key == "range_includes_radius") cfg.arena.range_includes_radius = parse_bool(key, value);
    else if (key == "box_length") cfg.shape.length = parse_double(key, value);
    else if (key == "box_width") cfg.shape.width = parse_double(key, value);
    else if (key == "goal_x") cfg.goal.center.x = parse_double(key, value);
    else if (key == "goal_y") cfg.goal.center.y = parse_double(key, value);
    else if (key == "goal_radius") cfg.goal.radius = parse_double(key, value);
    else if (key == "n_obstacles") cfg.n_obstacles = parse_int(key, value);
    else if (key == "obstacle_radius") cfg.obstacle_radius = parse_double(key, value);
    else if (key == "obstacle_clearance") cfg.obstacle_clearance = parse_double(key, value);
    else if (key == "max_iterations") cfg.max_iterations = parse_int(key, value);
    else if (key == "n_episodes") cfg.n_episodes = parse_int(key, value);
    else if (key == "alpha") cfg.hyperparams.alpha = parse_double(key, value);
    else if (key == "gamma") cfg.hyperparams.gamma = parse_double(key, value);
    else if (key == "epsilon") cfg.hyperparams.epsilon = parse_double(key, value);
    else if (key == "omega") cfg.hyperparams.omega = parse_double(key, value);
    else if (key == "c_d") cfg.hyperparams.c_d = parse_double(key, value);
    else if (key == "w1") cfg.hyperparams.w1 = parse_double(key, value);
    else if (key == "w2") cfg.hyperparams.w2 = parse_double(key, value);
    else if (key == "w3") cfg.hyperparams.w3 = parse_double(key, value);
    else if (key == "mode") cfg.mode = parse_mode(value);
    else if (key == "obstacle_seed") cfg.obstacle_seed = parse_u64(key, value);
    else if (key == "policy_seed") cfg.policy_seed = parse_u64(key, value);
    else if (key == "coop_average_neighbors") cfg.coop_average_neighbors = parse_bool(key, value);
    else if (key == "coop_omega_weights_neighbors") cfg.coop_omega_weights_neighbors = parse_bool(key, value);
    else if (key == "coop_shrink_when_alone") cfg.coop_shrink_when_alone = parse_bool(key, value);
    else if (key == "shuffle_agent_order") cfg.shuffle_agent_order = parse_bool(key, value);
    else {
      throw ConfigError(source_name + ":" + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
  }
  validate_config(cfg);
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse_config(in, path);
}

/// Canonical text form; also the byte stream the config hash is taken over.
inline std::string config_to_string(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "arena_width = " << cfg.arena.width << "\n"
      << "arena_height = " << cfg.arena.height << "\n"
      << "obstacle_region_x_min = " << cfg.arena.obstacle_region.x_min << "\n"
      << "obstacle_region_x_max = " << cfg.arena.obstacle_region.x_max << "\n"
      << "obstacle_region_y_min = " << cfg.arena.obstacle_region.y_min << "\n"
      << "obstacle_region_y_max = " << cfg.arena.obstacle_region.y_max << "\n"
      << "detection_range = " << cfg.arena.detection_range << "\n"
      << "box_start_x = " << cfg.arena.box_start.center.x << "\n"
      << "box_start_y = " << cfg.arena.box_start.center.y << "\n"
      << "box_start_angle = " << cfg.arena.box_start.angle_deg << "\n"
      << "translation_step = " << cfg.arena.translation_step << "\n"
      << "rotation_step = " << cfg.arena.rotation_step << "\n"
      << "range_includes_radius = " << (cfg.arena.range_includes_radius ? "true" : "false") << "\n"
      << "box_length = " << cfg.shape.length << "\n"
      << "box_width = " << cfg.shape.width << "\n"
      << "goal_x = " << cfg.goal.center.x << "\n"
      << "goal_y = " << cfg.goal.center.y << "\n"
      << "goal_radius = " << cfg.goal.radius << "\n"
      << "n_obstacles = " << cfg.n_obstacles << "\n"
      << "obstacle_radius = " << cfg.obstacle_radius << "\n"
      << "obstacle_clearance = " << cfg.obstacle_clearance << "\n"
      << "max_iterations = " << cfg.max_iterations << "\n"
      << "n_episodes = " << cfg.n_episodes << "\n"
      << "alpha = " << cfg.hyperparams.alpha << "\n"
      << "gamma = " << cfg.hyperparams.gamma << "\n"
      << "epsilon = " << cfg.hyperparams.epsilon << "\n"
      << "omega = " << cfg.hyperparams.omega << "\n"
      << "c_d = " << cfg.hyperparams.c_d << "\n"
      << "w1 = " << cfg.hyperparams.w1 << "\n"
      << "w2 = " << cfg.hyperparams.w2 << "\n"
      << "w3 = " << cfg.hyperparams.w3 << "\n"
      << "mode = " << mode_name(cfg.mode) << "\n"
      << "obstacle_seed = " << cfg.obstacle_seed << "\n"
      << "policy_seed = " << cfg.policy_seed << "\n"
      << "coop_average_neighbors = " << (cfg.coop_average_neighbors ? "true" : "false") << "\n"
      << "coop_omega_weights_neighbors = " << (cfg.coop_omega_weights_neighbors ? "true" : "false") << "\n"
      << "coop_shrink_when_alone = " << (cfg.coop_shrink_when_alone ? "true" : "false") << "\n"
      << "shuffle_agent_order = " << (cfg.shuffle_agent_order ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace boxpush
