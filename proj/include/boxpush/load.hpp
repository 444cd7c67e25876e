#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "boxpush/report.hpp"

namespace boxpush {

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  return fields;
}

}  // namespace detail

/// Rebuilds a RunResult (minus Q-tables) from a `run` output directory,
/// enough to re-render every figure.
inline RunResult load_run_outputs(const std::string& dir) {
  RunResult result;
  {
    std::istringstream in(read_file(dir + "/config_resolved.txt"));
    result.config = parse_config(in, dir + "/config_resolved.txt");
  }
  {
    std::istringstream in(read_file(dir + "/obstacles.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = detail::split_csv_line(line);
      if (f.size() != 3) throw std::runtime_error("bad obstacles.csv row");
      result.obstacles.push_back(
          {{std::stod(f[0]), std::stod(f[1])}, std::stod(f[2])});
    }
  }
  {
    std::istringstream in(read_file(dir + "/iterations.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = detail::split_csv_line(line);
      if (f.size() != 4) throw std::runtime_error("bad iterations.csv row");
      EpisodeLog ep;
      ep.episode_index = std::stoi(f[0]);
      ep.iterations_used = std::stoi(f[1]);
      ep.reached_goal = f[2] == "1";
      ep.cumulative_reward = std::stod(f[3]);
      result.episodes.push_back(ep);
    }
  }
  {
    std::istringstream in(read_file(dir + "/trace.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = detail::split_csv_line(line);
      if (f.size() != 6) throw std::runtime_error("bad trace.csv row");
      const int ep = std::stoi(f[0]);
      if (ep < 0 || ep >= static_cast<int>(result.episodes.size())) {
        throw std::runtime_error("trace.csv episode out of range");
      }
      result.episodes[ep].pose_trace.push_back(
          {std::stoi(f[1]), std::stoi(f[2]),
           BoxPose{{std::stod(f[3]), std::stod(f[4])}, std::stod(f[5])}});
    }
  }
  return result;
}

/// Rebuilds the per-mode mean-iterations series from comparison.csv.
inline ComparisonSummary load_comparison_csv(const std::string& path) {
  ComparisonSummary s;
  std::istringstream in(read_file(path));
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty " + path);
  const auto header = detail::split_csv_line(line);
  for (std::size_t i = 1; i < header.size(); ++i) {
    s.modes.push_back(parse_mode(header[i]));
  }
  s.mean_iterations.assign(s.modes.size(), {});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv_line(line);
    if (f.size() != header.size()) {
      throw std::runtime_error("bad comparison.csv row");
    }
    for (std::size_t m = 0; m < s.modes.size(); ++m) {
      s.mean_iterations[m].push_back(std::stod(f[m + 1]));
    }
    ++s.n_episodes;
  }
  return s;
}

}  // namespace boxpush
