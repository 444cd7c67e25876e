// Command-line front end: run one experiment, compare the four algorithms,
// or re-render figures from previously written output directories.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boxpush/load.hpp"
#include "boxpush/report.hpp"

namespace {

using namespace boxpush;

ExperimentConfig config_from_file_or_default(const std::string& path) {
  if (path.empty()) {
    ExperimentConfig cfg;
    validate_config(cfg);
    return cfg;
  }
  return load_config(path);
}

int cmd_run(const std::string& config_path, const std::string& mode,
            std::int64_t obstacle_seed, std::int64_t policy_seed,
            const std::string& out_dir) {
  ExperimentConfig cfg = config_from_file_or_default(config_path);
  if (!mode.empty()) cfg.mode = parse_mode(mode);
  if (obstacle_seed >= 0) cfg.obstacle_seed = obstacle_seed;
  if (policy_seed >= 0) cfg.policy_seed = policy_seed;
  const RunResult result = run_experiment(cfg);
  write_run_outputs(result, out_dir);
  int reached = 0;
  for (const auto& ep : result.episodes) reached += ep.reached_goal ? 1 : 0;
  std::cout << "mode=" << mode_name(cfg.mode) << " episodes="
            << result.episodes.size() << " reached_goal=" << reached
            << " out=" << out_dir << "\n";
  return 0;
}

int cmd_compare(const std::string& config_path, int n_seeds,
                const std::string& out_dir) {
  ExperimentConfig base = config_from_file_or_default(config_path);
  const std::vector<AlgorithmMode> modes(kAllModes.begin(), kAllModes.end());
  const std::vector<RunResult> results = run_comparison(base, modes, n_seeds);
  std::filesystem::create_directories(out_dir);
  for (int seed = 0; seed < n_seeds; ++seed) {
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const RunResult& run = results[seed * modes.size() + m];
      write_run_outputs(run, out_dir + "/seed" + std::to_string(seed) + "_" +
                                 mode_name(modes[m]));
    }
  }
  const ComparisonSummary summary = summarize_comparison(results, modes, n_seeds);
  write_file(out_dir + "/comparison.csv", comparison_csv(summary));
  write_file(out_dir + "/comparison_report.txt", comparison_report(summary));
  write_file(out_dir + "/comparison.svg", render_comparison_svg(summary));
  std::cout << comparison_report(summary);
  return 0;
}

int cmd_plot(const std::string& in_path, const std::string& kind,
             int episode, const std::string& out_path) {
  std::string svg;
  if (kind == "arena_path") {
    const RunResult result = load_run_outputs(in_path);
    svg = render_arena_path_svg(
        result, episode == -2 ? static_cast<int>(result.episodes.size()) - 1
                              : episode);
  } else if (kind == "iterations_curve") {
    svg = render_iterations_curve_svg(load_run_outputs(in_path));
  } else {  // comparison_overlay
    svg = render_comparison_svg(load_comparison_csv(in_path + "/comparison.csv"));
  }
  write_file(out_path, svg);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Box-pushing Q-learning simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string mode;
  std::int64_t obstacle_seed = -1;
  std::int64_t policy_seed = -1;
  std::string out_dir = "out";
  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--config", config_path, "Config file (key = value lines)");
  run->add_option("--mode", mode, "single|separate|shared|cooperative")
      ->check(CLI::IsMember({"single", "separate", "shared", "cooperative"}));
  run->add_option("--obstacle-seed", obstacle_seed, "Obstacle layout seed");
  run->add_option("--policy-seed", policy_seed, "Policy rng seed");
  run->add_option("--out", out_dir, "Output directory")->required();

  int n_seeds = 10;
  auto* compare = app.add_subcommand("compare", "Run all four algorithms");
  compare->add_option("--config", config_path, "Config file");
  compare->add_option("--seeds", n_seeds, "Number of seed pairs")
      ->check(CLI::PositiveNumber);
  compare->add_option("--out", out_dir, "Output directory")->required();

  std::string in_path;
  std::string kind;
  std::string out_file;
  int episode = -2;  // default: final episode for arena_path
  auto* plot = app.add_subcommand("plot", "Render an SVG from run outputs");
  plot->add_option("--in", in_path, "Run (or compare) output directory")
      ->required();
  plot->add_option("--kind", kind, "Figure kind")
      ->required()
      ->check(CLI::IsMember(
          {"arena_path", "iterations_curve", "comparison_overlay"}));
  plot->add_option("--episode", episode,
                   "Episode for arena_path (-1 = all, default final)");
  plot->add_option("--out", out_file, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, mode, obstacle_seed, policy_seed, out_dir);
    }
    if (compare->parsed()) return cmd_compare(config_path, n_seeds, out_dir);
    return cmd_plot(in_path, kind, episode, out_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
