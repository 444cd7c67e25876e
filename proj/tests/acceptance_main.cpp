// Acceptance suite: one pass/fail line per criterion.
// Usage: acceptance [--cli <path-to-cli>] [A1 A2 ...]; no names runs all.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "boxpush/load.hpp"
#include "boxpush/report.hpp"

using namespace boxpush;
namespace fs = std::filesystem;

namespace {

std::string g_cli_path;

bool nearly(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// --- shared helpers -------------------------------------------------------

bool point_in_box(const Vec2& p, const BoxPose& pose, const BoxShape& shape) {
  const double a = deg_to_rad(pose.angle_deg);
  const Vec2 d = p - pose.center;
  const double lx = std::cos(a) * d.x + std::sin(a) * d.y;
  const double ly = -std::sin(a) * d.x + std::cos(a) * d.y;
  return std::abs(lx) <= shape.length / 2 && std::abs(ly) <= shape.width / 2;
}

bool collides_oracle(const BoxPose& pose, const BoxShape& shape,
                     const Obstacle& obs) {
  if (point_in_box(obs.center, pose, shape)) return true;
  for (int k = 0; k < 3600; ++k) {
    const double a = 2.0 * kPi * k / 3600.0;
    if (point_in_box({obs.center.x + obs.radius * std::cos(a),
                      obs.center.y + obs.radius * std::sin(a)},
                     pose, shape)) {
      return true;
    }
  }
  const double ar = deg_to_rad(pose.angle_deg);
  const Vec2 ex{std::cos(ar) * shape.length / 2, std::sin(ar) * shape.length / 2};
  const Vec2 ey{-std::sin(ar) * shape.width / 2, std::cos(ar) * shape.width / 2};
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      if (distance(pose.center + ex * sx + ey * sy, obs.center) <= obs.radius) {
        return true;
      }
    }
  }
  return false;
}

bool xml_well_formed(const std::string& xml) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  if (xml.rfind("<?xml", 0) == 0) i = xml.find("?>") + 2;
  while (i < xml.size()) {
    const auto open = xml.find('<', i);
    if (open == std::string::npos) break;
    const auto close = xml.find('>', open);
    if (close == std::string::npos) return false;
    std::string tag = xml.substr(open + 1, close - open - 1);
    i = close + 1;
    if (tag.empty()) return false;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    if (self_closing) tag.pop_back();
    if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
    if (!self_closing) stack.push_back(tag.substr(0, tag.find_first_of(" \t\n")));
  }
  return stack.empty();
}

// --- criteria -------------------------------------------------------------

// Hand-computed oracles for the four update rules and the reward formulas.
bool criterion_a1(std::string& detail) {
  bool ok = true;
  constexpr double tol = 1e-12;
  const StateId s{5}, s_next{6};
  const Action a = Action::TranslateForward;

  {  // single-agent TD update
    QTable t;
    td_update_single(t, s, a, 1.0, s_next, 0.3, 0.4);
    ok &= nearly(t.at(s, a), 0.3, tol);
    QTable t2;
    t2.at(s, a) = 1.0;
    t2.at(s_next, a) = 1.0;
    td_update_single(t2, s, a, 0.0, s_next, 0.3, 0.4);
    ok &= nearly(t2.at(s, a), 0.82, tol);
    QTable t3;
    t3.at(s, a) = 0.25;
    td_update_single(t3, s, a, 9.0, s_next, 0.0, 0.4);
    ok &= t3.at(s, a) == 0.25;
  }
  {  // independent update and its alpha = 1 degenerate case
    QTable t;
    td_update_independent(t, s, a, 1.0, s_next, 0.3, 0.4);
    ok &= nearly(t.at(s, a), 0.3, tol);
    QTable t2;
    t2.at(s_next, a) = 2.0;
    td_update_independent(t2, s, a, 1.5, s_next, 1.0, 0.4);
    ok &= nearly(t2.at(s, a), 1.5 + 0.4 * 2.0, tol);
  }
  {  // shared table: sequential composition by two agents
    QTable shared;
    td_update_shared(shared, s, a, 1.0, s_next, 0.3, 0.4);
    ok &= nearly(shared.at(s, a), 0.3, tol);
    td_update_shared(shared, s, a, 1.0, s_next, 0.3, 0.4);
    ok &= nearly(shared.at(s, a), 0.7 * 0.3 + 0.3, tol);
  }
  {  // cooperative blend
    const std::vector<StateAction> sa{{s, a}, {s, a}, {s, a}};
    std::vector<QTable> tables(3);
    tables[0].at(s, a) = 3.0;
    cooperative_blend(tables, 0, sa, {1, 2}, 1.0);
    ok &= tables[0].at(s, a) == 3.0;

    std::vector<QTable> t2(3);
    t2[0].at(s, a) = 2.0;
    t2[1].at(s, a) = 1.5;
    t2[2].at(s, a) = 0.5;
    cooperative_blend(t2, 0, sa, {1, 2}, 0.6);
    ok &= nearly(t2[0].at(s, a), 2.0, tol);

    std::vector<QTable> t3(3);
    t3[1].at(s, a) = 1.0;
    t3[2].at(s, a) = 1.0;
    cooperative_blend(t3, 0, sa, {1, 2}, 0.3);
    ok &= nearly(t3[0].at(s, a), 1.4, tol);
  }
  {  // reward formulas
    Hyperparams hp;
    const Goal g{{100, 0}, 30};
    RewardParts r = compute_reward({{0, 0}, 0}, {{20, 0}, 0}, g, false, hp);
    ok &= nearly(r.r_distance, 18.0, tol);
    ok &= nearly(r.r_rotation, 0.1, tol);
    ok &= r.r_obstacle == 1.0;
    r = compute_reward({{0, 0}, 0}, {{0, 0}, 0}, g, false, hp);
    ok &= nearly(r.r_total, 0.255, tol);
    r = compute_reward({{0, 0}, 0}, {{0, 0}, 90}, g, false, hp);
    ok &= nearly(r.r_rotation, -0.9, tol);
    r = compute_reward({{0, 0}, 0}, {{0, 0}, 0}, g, true, hp);
    ok &= r.r_obstacle == -9.0;
  }
  detail = "formula oracles within 1e-12";
  return ok;
}

// Update-rule identity over random tuples.
bool criterion_a2(std::string& detail) {
  Rng rng(2024);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const StateId s{rng.uniform_int(kNumStates)};
    StateId s_next{rng.uniform_int(kNumStates)};
    if (s_next == s) s_next.value = (s_next.value + 1) % kNumStates;
    const Action a = static_cast<Action>(rng.uniform_int(kNumActions));
    QTable ta, tb;
    const double q0 = rng.uniform(-10, 10);
    const double max_next = rng.uniform(-10, 10);
    ta.at(s, a) = tb.at(s, a) = q0;
    for (int k = 0; k < kNumActions; ++k) {
      ta.at(s_next, static_cast<Action>(k)) =
          tb.at(s_next, static_cast<Action>(k)) = max_next;
    }
    const double r = rng.uniform(-10, 10);
    const double alpha = rng.uniform01();
    const double gamma = rng.uniform(0, 0.999);
    td_update_single(ta, s, a, r, s_next, alpha, gamma);
    td_update_independent(tb, s, a, r, s_next, alpha, gamma);
    worst = std::max(worst, std::abs(ta.at(s, a) - tb.at(s, a)));
  }
  std::ostringstream d;
  d << "max |single - independent| = " << worst;
  detail = d.str();
  return worst <= 1e-12;
}

// Kinematics and collision geometry.
bool criterion_a3(std::string& detail) {
  bool ok = true;
  Rng rng(31);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const BoxPose pose{{rng.uniform(-500, 500), rng.uniform(-500, 500)},
                       rng.uniform(0, 360)};
    const double l = rng.uniform(0.1, 50);
    const Action ta = static_cast<Action>(rng.uniform_int(4));
    const BoxPose after = translate_box(pose, ta, l);
    worst = std::max(worst, std::abs(distance(after.center, pose.center) - l));
    const Action ra = rng.uniform_int(2) ? Action::RotateCCW : Action::RotateCW;
    const BoxPose rotated = rotate_box(pose, ra, rng.uniform(1, 89));
    ok &= rotated.center == pose.center;  // exact
  }
  ok &= worst <= 1e-9;
  const BoxShape shape{120, 80};
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const BoxPose pose{{rng.uniform(-50, 50), rng.uniform(-50, 50)},
                       rng.uniform(0, 360)};
    const Obstacle obs{{rng.uniform(-150, 150), rng.uniform(-150, 150)},
                       rng.uniform(5, 40)};
    if (collides(pose, shape, obs) != collides_oracle(pose, shape, obs)) {
      ++mismatches;
    }
  }
  ok &= mismatches == 0;
  std::ostringstream d;
  d << "max displacement error " << worst << ", collision mismatches "
    << mismatches << "/1000";
  detail = d.str();
  return ok;
}

// State encoder partition and the sector example.
bool criterion_a4(std::string& detail) {
  bool ok = true;
  int counts[32] = {};
  int prev = 0;
  for (int i = 0; i < 36000; ++i) {
    const double theta = i * 0.01;
    const int cell = encode_goal_bits(theta);
    ok &= cell >= 0 && cell < 32 && cell >= prev;
    ok &= cell == static_cast<int>(theta / 11.25);
    ++counts[cell];
    prev = cell;
  }
  for (int c = 0; c < 32; ++c) ok &= counts[c] == 1125;  // equal 11.25-deg cells

  const std::vector<Obstacle> obstacles{
      {{100 * std::cos(deg_to_rad(60)), 100 * std::sin(deg_to_rad(60))}, 10},
      {{100 * std::cos(deg_to_rad(240)), 100 * std::sin(deg_to_rad(240))}, 10},
      {{100 * std::cos(deg_to_rad(290)), 100 * std::sin(deg_to_rad(290))}, 10}};
  const int bits = encode_obstacle_bits({{0, 0}, 0}, obstacles, 150);
  ok &= bits == 0b01000110;
  std::ostringstream d;
  d << "32 cells x 1125 samples, sector example bits = " << bits;
  detail = d.str();
  return ok;
}

// Single-agent learning: late-window iterations and goal reliability.
bool criterion_a5(std::string& detail) {
  ExperimentConfig base;
  base.mode = AlgorithmMode::SingleAgent;
  base.obstacle_seed = 100;
  base.policy_seed = 500;
  const auto results =
      run_comparison(base, {AlgorithmMode::SingleAgent}, 10);
  int good = 0;
  for (const RunResult& run : results) {
    const double early = window_mean_iterations(run, 0, 9);
    const double late = window_mean_iterations(run, 60, 79);
    const bool all_goal = window_goal_rate(run, 60, 79) == 1.0;
    if (late < 0.5 * early && all_goal) ++good;
  }
  std::ostringstream d;
  d << good << "/10 runs halved late-window iterations with 100% goal rate";
  detail = d.str();
  return good >= 8;
}

struct ComparisonCache {
  std::vector<RunResult> results;
  ComparisonSummary summary;
  bool ready = false;
};
ComparisonCache g_comparison;

const ComparisonCache& comparison_runs() {
  if (!g_comparison.ready) {
    ExperimentConfig base;
    base.obstacle_seed = 100;
    base.policy_seed = 500;
    const std::vector<AlgorithmMode> modes(kAllModes.begin(), kAllModes.end());
    g_comparison.results = run_comparison(base, modes, 10);
    g_comparison.summary = summarize_comparison(g_comparison.results, modes, 10);
    g_comparison.ready = true;
  }
  return g_comparison;
}

// Algorithm ranking across seeds.
bool criterion_a6(std::string& detail) {
  const ComparisonSummary& s = comparison_runs().summary;
  const int coop = mode_index(s, AlgorithmMode::Cooperative);
  const int sep = mode_index(s, AlgorithmMode::MultiSeparate);
  const int shr = mode_index(s, AlgorithmMode::MultiShared);
  int beats_sep = 0, beats_shr = 0;
  for (int seed = 0; seed < s.n_seeds; ++seed) {
    if (s.late_mean[coop][seed] < s.late_mean[sep][seed]) ++beats_sep;
    if (s.late_mean[coop][seed] < s.late_mean[shr][seed]) ++beats_shr;
  }
  const bool ok = beats_sep >= 8 && beats_shr >= 7;
  std::ostringstream d;
  d << "cooperative beats separate " << beats_sep << "/10, shared "
    << beats_shr << "/10";
  if (!ok) d << " -- RANKING DISCREPANCY (see comparison report)";
  detail = d.str();
  std::cout << comparison_report(s);
  return ok;
}

// Cooperative goal reliability pooled across seeds.
bool criterion_a7(std::string& detail) {
  const ComparisonSummary& s = comparison_runs().summary;
  const int coop = mode_index(s, AlgorithmMode::Cooperative);
  double pooled = 0.0;
  for (int seed = 0; seed < s.n_seeds; ++seed) {
    pooled += s.late_goal_rate[coop][seed];
  }
  pooled /= s.n_seeds;
  std::ostringstream d;
  d << "cooperative late-window goal rate " << pooled * 100.0 << "%";
  detail = d.str();
  return pooled >= 0.95;
}

// End-to-end determinism through the CLI.
bool criterion_a8(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no --cli path given";
    return false;
  }
  const fs::path base = fs::temp_directory_path() / "boxpush_a8";
  fs::remove_all(base);
  fs::create_directories(base);
  write_file((base / "config.txt").string(),
             "mode = separate\nn_episodes = 20\nmax_iterations = 400\n");
  for (const char* sub : {"r1", "r2"}) {
    const std::string cmd = "\"" + g_cli_path + "\" run --config \"" +
                            (base / "config.txt").string() +
                            "\" --obstacle-seed 5 --policy-seed 6 --out \"" +
                            (base / sub).string() + "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      detail = "cli run failed";
      return false;
    }
  }
  bool ok = true;
  for (const char* name :
       {"iterations.csv", "trace.csv", "qtable_0.txt", "qtable_1.txt",
        "qtable_2.txt", "manifest.txt"}) {
    ok &= read_file((base / "r1" / name).string()) ==
          read_file((base / "r2" / name).string());
  }
  fs::remove_all(base);
  detail = "two cli runs byte-identical";
  return ok;
}

// Compare outputs: four-series SVG overlay and summary CSV shape.
bool criterion_a9(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "no --cli path given";
    return false;
  }
  const fs::path base = fs::temp_directory_path() / "boxpush_a9";
  fs::remove_all(base);
  fs::create_directories(base);
  write_file((base / "config.txt").string(), "max_iterations = 50\n");
  const std::string cmd = "\"" + g_cli_path + "\" compare --config \"" +
                          (base / "config.txt").string() +
                          "\" --seeds 1 --out \"" + (base / "cmp").string() +
                          "\" > /dev/null";
  if (std::system(cmd.c_str()) != 0) {
    detail = "cli compare failed";
    return false;
  }
  bool ok = true;
  const std::string svg = read_file((base / "cmp" / "comparison.svg").string());
  ok &= xml_well_formed(svg);
  std::size_t polylines = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++polylines;
    pos += 9;
  }
  ok &= polylines == 4;
  const ComparisonSummary loaded =
      load_comparison_csv((base / "cmp" / "comparison.csv").string());
  ok &= loaded.modes.size() == 4;
  ok &= loaded.n_episodes == 80;
  for (const auto& series : loaded.mean_iterations) ok &= series.size() == 80;
  fs::remove_all(base);
  std::ostringstream d;
  d << polylines << " polylines, " << loaded.n_episodes << " episodes per series";
  detail = d.str();
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> requested;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli_path = argv[++i];
    } else {
      requested.push_back(arg);
    }
  }
  const std::vector<std::pair<std::string, std::function<bool(std::string&)>>>
      criteria = {{"A1", criterion_a1}, {"A2", criterion_a2},
                  {"A3", criterion_a3}, {"A4", criterion_a4},
                  {"A5", criterion_a5}, {"A6", criterion_a6},
                  {"A7", criterion_a7}, {"A8", criterion_a8},
                  {"A9", criterion_a9}};
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    if (!requested.empty() &&
        std::find(requested.begin(), requested.end(), name) == requested.end()) {
      continue;
    }
    std::string detail;
    bool ok = false;
    try {
      ok = fn(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << name << " " << (ok ? "PASS" : "FAIL")
              << (detail.empty() ? "" : " - " + detail) << "\n";
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
