#pragma once

#include <cstdint>
#include <future>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxpush/qtable.hpp"
#include "boxpush/world.hpp"

namespace boxpush {

enum class AlgorithmMode {
  SingleAgent,
  MultiSeparate,
  MultiShared,
  Cooperative,
};

constexpr std::array<AlgorithmMode, 4> kAllModes = {
    AlgorithmMode::SingleAgent, AlgorithmMode::MultiSeparate,
    AlgorithmMode::MultiShared, AlgorithmMode::Cooperative};

inline const char* mode_name(AlgorithmMode m) {
  switch (m) {
    case AlgorithmMode::SingleAgent: return "single";
    case AlgorithmMode::MultiSeparate: return "separate";
    case AlgorithmMode::MultiShared: return "shared";
    case AlgorithmMode::Cooperative: return "cooperative";
  }
  return "?";
}

inline int agents_for_mode(AlgorithmMode m) {
  return m == AlgorithmMode::SingleAgent ? 1 : 3;
}

inline int tables_for_mode(AlgorithmMode m) {
  switch (m) {
    case AlgorithmMode::SingleAgent:
    case AlgorithmMode::MultiShared: return 1;
    default: return 3;
  }
}

/// Full reproduction record for one run.
struct ExperimentConfig {
  Arena arena;
  BoxShape shape;
  Goal goal{{800.0, 700.0}, 30.0};
  int n_obstacles = 6;
  double obstacle_radius = 10.0;
  double obstacle_clearance = 145.0;  // gap wide enough for the box diagonal
  int max_iterations = 2000;
  int n_episodes = 80;
  Hyperparams hyperparams;
  AlgorithmMode mode = AlgorithmMode::SingleAgent;
  std::uint64_t obstacle_seed = 1;
  std::uint64_t policy_seed = 1;
  // Variant switches for choices the base setup leaves open.
  bool coop_average_neighbors = true;
  bool coop_omega_weights_neighbors = true;
  bool coop_shrink_when_alone = false;
  bool shuffle_agent_order = false;
};

/// One logged pose. iteration 0 / sub_step 0 is the episode start pose;
/// sub_step is the agent index within the round (always 0 for single-agent).
struct TracePoint {
  int iteration = 0;
  int sub_step = 0;
  BoxPose pose;
};

struct EpisodeLog {
  int episode_index = 0;
  int iterations_used = 0;
  bool reached_goal = false;
  std::vector<TracePoint> pose_trace;
  double cumulative_reward = 0.0;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<Obstacle> obstacles;
  std::vector<EpisodeLog> episodes;
  std::vector<QTable> final_tables;
};

/// Rejection-samples `count` obstacle centers uniformly in the region so
/// that no obstacle overlaps another obstacle, the box at its start pose,
/// or the goal disk. Deterministic for a given seed. `clearance` keeps
/// obstacle pairs (and the goal approach) far enough apart for the box to
/// fit through the gap; 0 degenerates to plain non-overlap.
inline std::vector<Obstacle> generate_obstacles(std::uint64_t seed, int count,
                                                const Region& region,
                                                double radius,
                                                const BoxPose& box_start,
                                                const BoxShape& shape,
                                                const Goal& goal,
                                                double clearance = 0.0) {
  constexpr int kBudgetPerObstacle = 10000;
  Rng rng(seed);
  std::vector<Obstacle> obstacles;
  obstacles.reserve(count);
  for (int i = 0; i < count; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kBudgetPerObstacle; ++attempt) {
      Obstacle cand{{rng.uniform(region.x_min, region.x_max),
                     rng.uniform(region.y_min, region.y_max)},
                    radius};
      bool ok = true;
      for (const auto& other : obstacles) {
        if (distance(cand.center, other.center) <
            cand.radius + other.radius + clearance) {
          ok = false;
          break;
        }
      }
      if (ok && collides(box_start, shape, cand)) ok = false;
      if (ok && distance(cand.center, goal.center) <
                    cand.radius + goal.radius + clearance) {
        ok = false;
      }
      if (ok) {
        obstacles.push_back(cand);
        placed = true;
        break;
      }
    }
    if (!placed) {
      throw std::runtime_error(
          "generate_obstacles: infeasible layout, rejection budget exhausted");
    }
  }
  return obstacles;
}

namespace detail {

/// Mutable state threaded through one episode.
struct EpisodeContext {
  const ExperimentConfig& cfg;
  const std::vector<Obstacle>& obstacles;
  std::vector<QTable>& tables;
  Rng& rng;
  BoxPose pose;
  std::vector<StateAction> current_sa;  // cooperative mode only
};

inline StateId observe(const EpisodeContext& ctx) {
  return encode_state(ctx.pose, ctx.cfg.goal, ctx.obstacles,
                      ctx.cfg.arena.detection_range,
                      ctx.cfg.arena.range_includes_radius);
}

inline std::vector<int> agent_order(EpisodeContext& ctx, int n_agents) {
  std::vector<int> order(n_agents);
  for (int i = 0; i < n_agents; ++i) order[i] = i;
  if (ctx.cfg.shuffle_agent_order) {
    for (int i = n_agents - 1; i > 0; --i) {
      std::swap(order[i], order[ctx.rng.uniform_int(i + 1)]);
    }
  }
  return order;
}

}  // namespace detail

/// One single-agent iteration: observe, act epsilon-greedily, step, update.
inline Transition run_iteration_single(detail::EpisodeContext& ctx) {
  const Hyperparams& hp = ctx.cfg.hyperparams;
  const StateId s = detail::observe(ctx);
  const Action a = select_action(ctx.tables[0], s, hp.epsilon, ctx.rng);
  const Transition t = step(ctx.pose, ctx.cfg.shape, ctx.cfg.goal,
                            ctx.obstacles, ctx.cfg.arena, a, hp);
  ctx.pose = t.pose_after;
  td_update_single(ctx.tables[0], t.state_before, a, t.reward.r_total,
                   t.state_after, hp.alpha, hp.gamma);
  return t;
}

/// One 3-agent round for the separate- and shared-table modes. All agents
/// observe the round-start state, the three actions are applied to the box
/// in agent order, and a single aggregate reward over the whole round feeds
/// one TD update per agent at the end.
inline std::vector<Transition> run_iteration_multi(detail::EpisodeContext& ctx) {
  const Hyperparams& hp = ctx.cfg.hyperparams;
  const bool shared = ctx.cfg.mode == AlgorithmMode::MultiShared;
  const int n_agents = agents_for_mode(ctx.cfg.mode);
  const StateId s_start = detail::observe(ctx);
  const BoxPose pose_start = ctx.pose;

  std::vector<Transition> transitions;
  transitions.reserve(n_agents);
  std::vector<int> actors = detail::agent_order(ctx, n_agents);
  std::vector<Action> chosen(n_agents);
  for (int i : actors) {
    QTable& table = shared ? ctx.tables[0] : ctx.tables[i];
    chosen[i] = select_action(table, s_start, hp.epsilon, ctx.rng);
  }
  bool any_collision = false;
  for (int i : actors) {
    Transition t = step(ctx.pose, ctx.cfg.shape, ctx.cfg.goal, ctx.obstacles,
                        ctx.cfg.arena, chosen[i], hp);
    ctx.pose = t.pose_after;
    any_collision = any_collision || t.collided;
    transitions.push_back(t);
  }

  const StateId s_end = detail::observe(ctx);
  const RewardParts round_reward =
      compute_reward(pose_start, ctx.pose, ctx.cfg.goal, any_collision, hp);
  for (int i : actors) {
    if (shared) {
      td_update_shared(ctx.tables[0], s_start, chosen[i], round_reward.r_total,
                       s_end, hp.alpha, hp.gamma);
    } else {
      td_update_independent(ctx.tables[i], s_start, chosen[i],
                            round_reward.r_total, s_end, hp.alpha, hp.gamma);
    }
  }
  // Round bookkeeping for the caller: stamp the aggregate reward on the
  // last transition so cumulative sums count one reward per round.
  transitions.back().reward = round_reward;
  return transitions;
}

/// One cooperative round. Agents act round-robin on the current state,
/// update their own table immediately with their own sub-step reward, then
/// blend with their neighbors' current (state, action) entries.
inline std::vector<Transition> run_iteration_cooperative(
    detail::EpisodeContext& ctx) {
  const Hyperparams& hp = ctx.cfg.hyperparams;
  const int n_agents = agents_for_mode(ctx.cfg.mode);
  std::vector<Transition> transitions;
  transitions.reserve(n_agents);
  for (int i : detail::agent_order(ctx, n_agents)) {
    const StateId s = detail::observe(ctx);
    const Action a = select_action(ctx.tables[i], s, hp.epsilon, ctx.rng);
    Transition t = step(ctx.pose, ctx.cfg.shape, ctx.cfg.goal, ctx.obstacles,
                        ctx.cfg.arena, a, hp);
    ctx.pose = t.pose_after;
    td_update_independent(ctx.tables[i], t.state_before, a, t.reward.r_total,
                          t.state_after, hp.alpha, hp.gamma);
    ctx.current_sa[i] = StateAction{t.state_before, a};
    std::vector<int> neighbors;  // agents are co-located with the box
    for (int j = 0; j < n_agents; ++j) {
      if (j != i) neighbors.push_back(j);
    }
    const double omega = ctx.cfg.coop_omega_weights_neighbors
                             ? 1.0 - hp.omega
                             : hp.omega;
    cooperative_blend(ctx.tables, i, ctx.current_sa, neighbors, omega,
                      ctx.cfg.coop_average_neighbors,
                      ctx.cfg.coop_shrink_when_alone);
    transitions.push_back(t);
  }
  return transitions;
}

/// Runs one episode from the start pose until the goal is reached or the
/// iteration cap is hit. Tables persist across episodes.
inline EpisodeLog run_episode(const ExperimentConfig& cfg,
                              std::vector<QTable>& tables,
                              const std::vector<Obstacle>& obstacles, Rng& rng,
                              int episode_index) {
  detail::EpisodeContext ctx{cfg, obstacles, tables, rng, cfg.arena.box_start,
                             {}};
  const int n_agents = agents_for_mode(cfg.mode);
  ctx.current_sa.assign(
      n_agents, StateAction{detail::observe(ctx), Action::TranslateForward});

  EpisodeLog log;
  log.episode_index = episode_index;
  log.pose_trace.push_back({0, 0, ctx.pose});
  if (goal_reached(ctx.pose, cfg.goal)) {
    log.reached_goal = true;
    return log;
  }

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    if (cfg.mode == AlgorithmMode::SingleAgent) {
      const Transition t = run_iteration_single(ctx);
      log.pose_trace.push_back({iter, 0, t.pose_after});
      log.cumulative_reward += t.reward.r_total;
    } else {
      const auto transitions = cfg.mode == AlgorithmMode::Cooperative
                                   ? run_iteration_cooperative(ctx)
                                   : run_iteration_multi(ctx);
      for (std::size_t k = 0; k < transitions.size(); ++k) {
        log.pose_trace.push_back(
            {iter, static_cast<int>(k), transitions[k].pose_after});
      }
      if (cfg.mode == AlgorithmMode::Cooperative) {
        for (const auto& t : transitions) {
          log.cumulative_reward += t.reward.r_total;
        }
      } else {
        log.cumulative_reward += transitions.back().reward.r_total;
      }
    }
    log.iterations_used = iter;
    if (goal_reached(ctx.pose, cfg.goal)) {
      log.reached_goal = true;
      break;
    }
  }
  return log;
}

/// Full run: obstacle layout from obstacle_seed, fresh zero tables, and
/// n_episodes sequential episodes driven by policy_seed.
inline RunResult run_experiment(const ExperimentConfig& cfg) {
  RunResult result;
  result.config = cfg;
  result.obstacles = generate_obstacles(
      cfg.obstacle_seed, cfg.n_obstacles, cfg.arena.obstacle_region,
      cfg.obstacle_radius, cfg.arena.box_start, cfg.shape, cfg.goal,
      cfg.obstacle_clearance);
  result.final_tables.assign(tables_for_mode(cfg.mode), QTable{});
  Rng rng(cfg.policy_seed);
  result.episodes.reserve(cfg.n_episodes);
  for (int ep = 0; ep < cfg.n_episodes; ++ep) {
    result.episodes.push_back(
        run_episode(cfg, result.final_tables, result.obstacles, rng, ep));
  }
  return result;
}

/// Runs every requested mode on a shared obstacle layout per seed index,
/// with an independent policy seed per run. Runs execute in parallel;
/// results are returned in (seed, mode) order regardless of completion
/// order.
inline std::vector<RunResult> run_comparison(
    const ExperimentConfig& base, const std::vector<AlgorithmMode>& modes,
    int n_seeds) {
  if (modes.empty()) {
    throw std::invalid_argument("run_comparison: no modes requested");
  }
  std::vector<std::future<RunResult>> futures;
  for (int seed_idx = 0; seed_idx < n_seeds; ++seed_idx) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      ExperimentConfig cfg = base;
      cfg.mode = modes[m];
      cfg.obstacle_seed = base.obstacle_seed + seed_idx;
      cfg.policy_seed =
          base.policy_seed + 1000ULL * seed_idx + static_cast<std::uint64_t>(m);
      futures.push_back(std::async(std::launch::async,
                                   [cfg] { return run_experiment(cfg); }));
    }
  }
  std::vector<RunResult> results;
  results.reserve(futures.size());
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

}  // namespace boxpush
