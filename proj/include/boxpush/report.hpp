#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxpush/config.hpp"
#include "boxpush/experiment.hpp"

namespace boxpush {

// ---------------------------------------------------------------------------
// hashing & formatting

/// FNV-1a 64-bit over a byte string.
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string config_hash(const ExperimentConfig& cfg) {
  return hash_hex(fnv1a64(config_to_string(cfg)));
}

/// Fixed 6-decimal formatting for serialized poses and rewards.
inline std::string format_fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// CSV emitters

inline std::string iterations_csv(const RunResult& result) {
  std::ostringstream out;
  out << "episode,iterations,reached_goal,cumulative_reward\n";
  for (std::size_t i = 0; i < result.episodes.size(); ++i) {
    const EpisodeLog& ep = result.episodes[i];
    out << ep.episode_index << "," << ep.iterations_used << ","
        << (ep.reached_goal ? 1 : 0) << ","
        << format_fixed(ep.cumulative_reward);
    if (i + 1 < result.episodes.size()) out << "\n";
  }
  out << "\n";
  return out.str();
}

inline void emit_iterations_csv(const RunResult& result,
                                const std::string& path) {
  write_file(path, iterations_csv(result));
}

/// episode_index < 0 means "all episodes".
inline std::string trace_csv(const RunResult& result, int episode_index) {
  if (episode_index >= static_cast<int>(result.episodes.size())) {
    throw std::out_of_range("trace: episode index out of range");
  }
  std::ostringstream out;
  out << "episode,iteration,sub_step,x,y,angle_deg\n";
  const auto emit_episode = [&](const EpisodeLog& ep) {
    for (const TracePoint& p : ep.pose_trace) {
      out << ep.episode_index << "," << p.iteration << "," << p.sub_step << ","
          << format_fixed(p.pose.center.x) << "," << format_fixed(p.pose.center.y)
          << "," << format_fixed(p.pose.angle_deg) << "\n";
    }
  };
  if (episode_index < 0) {
    for (const EpisodeLog& ep : result.episodes) emit_episode(ep);
  } else {
    emit_episode(result.episodes[episode_index]);
  }
  return out.str();
}

inline void emit_path_trace(const RunResult& result, int episode_index,
                            const std::string& path) {
  write_file(path, trace_csv(result, episode_index));
}

inline std::string obstacles_csv(const RunResult& result) {
  std::ostringstream out;
  out << "x,y,radius\n";
  for (const Obstacle& o : result.obstacles) {
    out << format_fixed(o.center.x) << "," << format_fixed(o.center.y) << ","
        << format_fixed(o.radius) << "\n";
  }
  return out.str();
}

/// Text Q-table snapshot: header line with the config hash, then 8192 rows
/// of 6 space-separated values. %.17g round-trips doubles exactly.
inline std::string qtable_snapshot(const QTable& table,
                                   const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "# boxpush-qtable v1 " << config_hash(cfg) << "\n";
  char buf[64];
  for (int s = 0; s < kNumStates; ++s) {
    for (int a = 0; a < kNumActions; ++a) {
      std::snprintf(buf, sizeof buf, "%.17g",
                    table.at(StateId{s}, static_cast<Action>(a)));
      out << buf << (a + 1 < kNumActions ? ' ' : '\n');
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// run manifest

/// `<fnv1a64-hex> <filename>` per emitted file, self-checked on write.
struct RunManifest {
  std::string directory;
  std::vector<std::pair<std::string, std::string>> entries;  // (hash, name)
};

inline RunManifest write_manifest(const std::string& dir,
                                  const std::vector<std::string>& files) {
  RunManifest m;
  m.directory = dir;
  std::ostringstream out;
  for (const std::string& name : files) {
    const std::string hash =
        hash_hex(fnv1a64(read_file(dir + "/" + name)));
    m.entries.emplace_back(hash, name);
    out << hash << " " << name << "\n";
  }
  write_file(dir + "/manifest.txt", out.str());
  for (const auto& [hash, name] : m.entries) {
    if (hash_hex(fnv1a64(read_file(dir + "/" + name))) != hash) {
      throw std::runtime_error("manifest self-check failed for " + name);
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// comparison summary

struct ComparisonSummary {
  std::vector<AlgorithmMode> modes;
  int n_seeds = 0;
  int n_episodes = 0;
  /// [mode][episode]: iterations averaged over seeds.
  std::vector<std::vector<double>> mean_iterations;
  /// [mode][seed]: per-run mean iterations over the late window (last 20
  /// episodes) and the early window (first 10).
  std::vector<std::vector<double>> late_mean;
  std::vector<std::vector<double>> early_mean;
  /// [mode][seed]: fraction of late-window episodes that reached the goal.
  std::vector<std::vector<double>> late_goal_rate;
};

inline double window_mean_iterations(const RunResult& run, int first,
                                     int last) {
  double sum = 0.0;
  int n = 0;
  for (const EpisodeLog& ep : run.episodes) {
    if (ep.episode_index >= first && ep.episode_index <= last) {
      sum += ep.iterations_used;
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

inline double window_goal_rate(const RunResult& run, int first, int last) {
  double reached = 0.0;
  int n = 0;
  for (const EpisodeLog& ep : run.episodes) {
    if (ep.episode_index >= first && ep.episode_index <= last) {
      reached += ep.reached_goal ? 1.0 : 0.0;
      ++n;
    }
  }
  return n > 0 ? reached / n : 0.0;
}

/// Results must be in the (seed, mode) order run_comparison produces.
inline ComparisonSummary summarize_comparison(
    const std::vector<RunResult>& results,
    const std::vector<AlgorithmMode>& modes, int n_seeds) {
  ComparisonSummary s;
  s.modes = modes;
  s.n_seeds = n_seeds;
  s.n_episodes = results.empty() ? 0 : static_cast<int>(results[0].episodes.size());
  const int n_modes = static_cast<int>(modes.size());
  s.mean_iterations.assign(n_modes, std::vector<double>(s.n_episodes, 0.0));
  s.late_mean.assign(n_modes, std::vector<double>(n_seeds, 0.0));
  s.early_mean.assign(n_modes, std::vector<double>(n_seeds, 0.0));
  s.late_goal_rate.assign(n_modes, std::vector<double>(n_seeds, 0.0));
  for (int seed = 0; seed < n_seeds; ++seed) {
    for (int m = 0; m < n_modes; ++m) {
      const RunResult& run = results[seed * n_modes + m];
      for (int ep = 0; ep < s.n_episodes; ++ep) {
        s.mean_iterations[m][ep] +=
            run.episodes[ep].iterations_used / static_cast<double>(n_seeds);
      }
      const int last = s.n_episodes - 1;
      s.late_mean[m][seed] = window_mean_iterations(run, last - 19, last);
      s.early_mean[m][seed] = window_mean_iterations(run, 0, 9);
      s.late_goal_rate[m][seed] = window_goal_rate(run, last - 19, last);
    }
  }
  return s;
}

inline std::string comparison_csv(const ComparisonSummary& s) {
  std::ostringstream out;
  out << "episode";
  for (AlgorithmMode m : s.modes) out << "," << mode_name(m);
  out << "\n";
  for (int ep = 0; ep < s.n_episodes; ++ep) {
    out << ep;
    for (std::size_t m = 0; m < s.modes.size(); ++m) {
      out << "," << format_fixed(s.mean_iterations[m][ep]);
    }
    out << "\n";
  }
  return out.str();
}

inline int mode_index(const ComparisonSummary& s, AlgorithmMode m) {
  for (std::size_t i = 0; i < s.modes.size(); ++i) {
    if (s.modes[i] == m) return static_cast<int>(i);
  }
  return -1;
}

/// Plain-text report of late-window statistics. When all four modes are
/// present, it states per-seed whether cooperative beat the separate- and
/// shared-table modes, and flags any ranking discrepancy explicitly.
inline std::string comparison_report(const ComparisonSummary& s) {
  std::ostringstream out;
  out << "modes: " << s.modes.size() << ", seeds: " << s.n_seeds
      << ", episodes: " << s.n_episodes << "\n";
  for (std::size_t m = 0; m < s.modes.size(); ++m) {
    double late = 0.0, early = 0.0, goal = 0.0;
    for (int seed = 0; seed < s.n_seeds; ++seed) {
      late += s.late_mean[m][seed];
      early += s.early_mean[m][seed];
      goal += s.late_goal_rate[m][seed];
    }
    out << mode_name(s.modes[m])
        << ": early_mean_iterations=" << format_fixed(early / s.n_seeds)
        << " late_mean_iterations=" << format_fixed(late / s.n_seeds)
        << " late_goal_rate=" << format_fixed(goal / s.n_seeds) << "\n";
  }
  const int coop = mode_index(s, AlgorithmMode::Cooperative);
  const int sep = mode_index(s, AlgorithmMode::MultiSeparate);
  const int shr = mode_index(s, AlgorithmMode::MultiShared);
  if (coop >= 0 && sep >= 0 && shr >= 0) {
    int beats_sep = 0, beats_shr = 0;
    for (int seed = 0; seed < s.n_seeds; ++seed) {
      if (s.late_mean[coop][seed] < s.late_mean[sep][seed]) ++beats_sep;
      if (s.late_mean[coop][seed] < s.late_mean[shr][seed]) ++beats_shr;
    }
    out << "cooperative beats separate in " << beats_sep << "/" << s.n_seeds
        << " seeds, beats shared in " << beats_shr << "/" << s.n_seeds
        << " seeds\n";
    const bool ok =
        beats_sep * 10 >= 8 * s.n_seeds && beats_shr * 10 >= 7 * s.n_seeds;
    out << (ok ? "ranking: cooperative ahead as expected\n"
               : "ranking: DISCREPANCY - cooperative did not dominate the "
                 "multi-agent baselines\n");
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// SVG rendering

namespace detail {

inline void svg_open(std::ostringstream& out, double w, double h) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
}

constexpr const char* kSeriesColors[] = {"#1f77b4", "#2ca02c", "#ff7f0e",
                                         "#9467bd"};

}  // namespace detail

/// Arena rectangle, obstacles as red circles, goal as a dark annulus, and
/// the box-center polyline of the selected episode (< 0: every episode).
inline std::string render_arena_path_svg(const RunResult& result,
                                         int episode_index = -1) {
  const Arena& arena = result.config.arena;
  const double margin = 40.0;
  const double w = arena.width + 2 * margin;
  const double h = arena.height + 2 * margin;
  const auto X = [&](double x) { return margin + x; };
  const auto Y = [&](double y) { return margin + arena.height - y; };
  std::ostringstream out;
  detail::svg_open(out, w, h);
  out << "<rect x=\"" << X(0) << "\" y=\"" << Y(arena.height) << "\" width=\""
      << arena.width << "\" height=\"" << arena.height
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const Obstacle& o : result.obstacles) {
    out << "<circle cx=\"" << X(o.center.x) << "\" cy=\"" << Y(o.center.y)
        << "\" r=\"" << o.radius << "\" fill=\"red\"/>\n";
  }
  const Goal& goal = result.config.goal;
  out << "<circle cx=\"" << X(goal.center.x) << "\" cy=\"" << Y(goal.center.y)
      << "\" r=\"" << goal.radius * 0.75
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
      << goal.radius * 0.5 << "\"/>\n";
  const auto emit_polyline = [&](const EpisodeLog& ep, const char* color) {
    if (ep.pose_trace.empty()) return;
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < ep.pose_trace.size(); ++i) {
      const Vec2& c = ep.pose_trace[i].pose.center;
      out << (i ? " " : "") << format_fixed(X(c.x)) << ","
          << format_fixed(Y(c.y));
    }
    out << "\"/>\n";
  };
  if (episode_index < 0) {
    for (const EpisodeLog& ep : result.episodes) emit_polyline(ep, "#9467bd44");
  } else {
    if (episode_index >= static_cast<int>(result.episodes.size())) {
      throw std::out_of_range("render: episode index out of range");
    }
    emit_polyline(result.episodes[episode_index], "#9467bd");
  }
  out << "</svg>\n";
  return out.str();
}

namespace detail {

inline void emit_curve_frame(std::ostringstream& out, double w, double h,
                             double margin) {
  out << "<line x1=\"" << margin << "\" y1=\"" << h - margin << "\" x2=\""
      << w - margin << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << h - margin << "\" stroke=\"black\"/>\n";
}

inline void emit_series(std::ostringstream& out,
                        const std::vector<double>& series, double y_max,
                        double w, double h, double margin, const char* color) {
  if (series.empty()) return;
  const double span_x = w - 2 * margin;
  const double span_y = h - 2 * margin;
  const double denom = series.size() > 1 ? series.size() - 1.0 : 1.0;
  out << "<polyline fill=\"none\" stroke=\"" << color
      << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double x = margin + span_x * (i / denom);
    const double y = h - margin - span_y * (y_max > 0 ? series[i] / y_max : 0);
    out << (i ? " " : "") << format_fixed(x) << "," << format_fixed(y);
  }
  out << "\"/>\n";
}

}  // namespace detail

/// Episode index vs iterations-used for a single run.
inline std::string render_iterations_curve_svg(const RunResult& result) {
  const double w = 640, h = 420, margin = 50;
  std::vector<double> series;
  double y_max = 1.0;
  for (const EpisodeLog& ep : result.episodes) {
    series.push_back(ep.iterations_used);
    y_max = std::max(y_max, static_cast<double>(ep.iterations_used));
  }
  std::ostringstream out;
  detail::svg_open(out, w, h);
  detail::emit_curve_frame(out, w, h, margin);
  detail::emit_series(out, series, y_max, w, h, margin, "#1f77b4");
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\">episode</text>\n"
      << "<text x=\"14\" y=\"" << h / 2 << "\" transform=\"rotate(-90 14 "
      << h / 2 << ")\" text-anchor=\"middle\">iterations</text>\n"
      << "</svg>\n";
  return out.str();
}

/// One mean-iterations series per mode plus a legend.
inline std::string render_comparison_svg(const ComparisonSummary& s) {
  const double w = 720, h = 440, margin = 50;
  double y_max = 1.0;
  for (const auto& series : s.mean_iterations) {
    for (double v : series) y_max = std::max(y_max, v);
  }
  std::ostringstream out;
  detail::svg_open(out, w, h);
  detail::emit_curve_frame(out, w, h, margin);
  for (std::size_t m = 0; m < s.modes.size(); ++m) {
    detail::emit_series(out, s.mean_iterations[m], y_max, w, h, margin,
                        detail::kSeriesColors[m % 4]);
    const double ly = margin + 18.0 * m;
    out << "<line x1=\"" << w - 190 << "\" y1=\"" << ly << "\" x2=\"" << w - 160
        << "\" y2=\"" << ly << "\" stroke=\"" << detail::kSeriesColors[m % 4]
        << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << w - 152 << "\" y=\"" << ly + 4 << "\">"
        << mode_name(s.modes[m]) << "</text>\n";
  }
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12
      << "\" text-anchor=\"middle\">episode</text>\n"
      << "</svg>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// run output bundle

/// Writes the full output set for one run and the manifest over it.
inline RunManifest write_run_outputs(const RunResult& result,
                                     const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files;
  write_file(dir + "/iterations.csv", iterations_csv(result));
  files.push_back("iterations.csv");
  write_file(dir + "/trace.csv", trace_csv(result, -1));
  files.push_back("trace.csv");
  for (std::size_t i = 0; i < result.final_tables.size(); ++i) {
    const std::string name = "qtable_" + std::to_string(i) + ".txt";
    write_file(dir + "/" + name,
               qtable_snapshot(result.final_tables[i], result.config));
    files.push_back(name);
  }
  write_file(dir + "/obstacles.csv", obstacles_csv(result));
  files.push_back("obstacles.csv");
  write_file(dir + "/config_resolved.txt", config_to_string(result.config));
  files.push_back("config_resolved.txt");
  return write_manifest(dir, files);
}

}  // namespace boxpush
