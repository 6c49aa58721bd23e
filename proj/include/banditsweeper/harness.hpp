// Episode loop, training and frozen evaluation, parameter sweeps and report
// aggregation.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "banditsweeper/bandit.hpp"
#include "banditsweeper/engine.hpp"
#include "banditsweeper/sa_baseline.hpp"

namespace banditsweeper {

struct Stage {
  GameConfig game;
  std::uint64_t episodes = 0;
};

/// A training run. Stages play in listed order; each episode's game and
/// tie-break streams derive from `seed`, the stage index and the episode
/// index, so the window size never perturbs the games played.
struct RunSpec {
  std::vector<Stage> schedule;
  AgentOptions agent;
  std::uint64_t seed = 0;
  std::uint64_t window = 10000;

  static RunSpec single(const GameConfig& game, std::uint64_t episodes,
                        const AgentOptions& agent = {}, std::uint64_t seed = 0,
                        std::uint64_t window = 10000);

  std::uint64_t episodes() const;
  /// Throws std::invalid_argument on invalid games, policy parameters, or a
  /// window that does not divide the episode count.
  void validate() const;
};

/// Stages of `episodes_per_stage` on a rows x cols board, one per mine count,
/// ascending.
std::vector<Stage> mixed_density_schedule(int rows, int cols, std::vector<int> mine_counts,
                                          std::uint64_t episodes_per_stage);

struct EpisodeResult {
  bool won = false;
  int plays = 0;       // policy moves (uncovers and flags)
  int flags_used = 0;  // flag moves
  std::size_t table_size_after = 0;
  std::size_t perfect_count_after = 0;

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;
};

struct WindowStat {
  std::uint64_t episodes_end = 0;
  std::uint64_t wins = 0;  // inside this window
  std::uint64_t episodes = 0;
  std::size_t table_size = 0;
  std::size_t perfect_count = 0;

  double win_rate() const { return episodes ? static_cast<double>(wins) / episodes : 0.0; }
  friend bool operator==(const WindowStat&, const WindowStat&) = default;
};

struct CountSummary {
  std::size_t keys = 0;
  double mean_n = 0.0;

  friend bool operator==(const CountSummary&, const CountSummary&) = default;
};

struct EcdfPoint {
  double q = 0.0;
  double fraction = 0.0;  // share of keys with Q <= q

  friend bool operator==(const EcdfPoint&, const EcdfPoint&) = default;
};

/// Action-count and value distribution of a table.
struct TableSummary {
  std::size_t distinct = 0;
  CountSummary perfect;
  CountSummary non_perfect;
  CountSummary all;
  std::vector<EcdfPoint> q_ecdf;

  friend bool operator==(const TableSummary&, const TableSummary&) = default;
};

template <class Key, class Hash>
TableSummary summarize(const ValueTable<Key, Hash>& table);

struct TrainingReport {
  std::uint64_t episodes = 0;
  std::uint64_t wins = 0;
  std::vector<WindowStat> windows;
  TableSummary table;

  /// wins / episodes; empty for an empty run.
  std::optional<double> final_win_rate() const;
  friend bool operator==(const TrainingReport&, const TrainingReport&) = default;
};

struct TrainingResult {
  TrainingReport report;
  AgentState agent;
};

EpisodeResult play_episode(const GameConfig& config, AgentState& agent,
                           std::uint64_t decision_seed);
/// Reuses `player` (and its key cache) across episodes.
EpisodeResult play_episode(const GameConfig& config, BanditPlayer& player,
                           const AgentState& agent, std::uint64_t decision_seed);

TrainingResult train(const RunSpec& spec);
/// Continues training an existing agent; spec.agent is ignored.
TrainingResult train(const RunSpec& spec, AgentState agent);

struct EvalResult {
  std::uint64_t episodes = 0;
  std::uint64_t wins = 0;
  double win_rate() const { return episodes ? static_cast<double>(wins) / episodes : 0.0; }
};

/// Plays `episodes` games against a frozen table (options.learning must be
/// false, else std::invalid_argument). Episodes split across `threads`
/// workers; the result does not depend on the thread count.
EvalResult evaluate(const AgentState& frozen, const GameConfig& config, std::uint64_t episodes,
                    std::uint64_t seed, unsigned threads = 1);

struct SATrainingResult {
  TrainingReport report;
  SAAgent agent;
};
SATrainingResult train_sa(const GameConfig& config, std::uint64_t episodes, std::uint64_t seed,
                          std::uint64_t window = 10000);

/// round(rows * cols * density), at least 1 where the board allows a mine,
/// at most rows * cols - 1.
int mines_for_density(int rows, int cols, double density);

struct SweepCell {
  int rows = 0;
  int cols = 0;
  double density = 0.0;
  int mines = 0;
  double win_rate = 0.0;  // training win rate
  std::size_t keys = 0;
};

/// One independent greedy-style training run per (rows, cols, density)
/// cell, run on up to `threads` workers. Cells come back in row-major order
/// of (rows, cols, density).
std::vector<SweepCell> sweep(const std::vector<int>& rows, const std::vector<int>& cols,
                             const std::vector<double>& densities, std::uint64_t episodes,
                             const AgentOptions& agent, std::uint64_t seed, unsigned threads = 1);

std::vector<SweepCell> sweep_dimensions(const std::vector<int>& rows, const std::vector<int>& cols,
                                        double density, std::uint64_t episodes,
                                        std::uint64_t seed, unsigned threads = 1);
std::vector<SweepCell> sweep_density(const std::vector<int>& heights, int width,
                                     const std::vector<double>& densities,
                                     std::uint64_t episodes, std::uint64_t seed,
                                     unsigned threads = 1);

// CSV exports. Each writes a header line followed by one record per row.
void write_windows_csv(std::ostream& out, const TrainingReport& report);
void write_ecdf_csv(std::ostream& out, const TableSummary& summary);
void write_counts_csv(std::ostream& out, const TableSummary& summary);
void write_keys_csv(std::ostream& out, const ActionTable& table);
void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells);

}  // namespace banditsweeper
