#include "banditsweeper/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "banditsweeper/text.hpp"

namespace banditsweeper {

namespace {

// Evaluation streams live apart from every training stage index.
constexpr std::uint64_t kEvalStage = 0x6576616cULL;

template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

RunSpec RunSpec::single(const GameConfig& game, std::uint64_t episodes, const AgentOptions& agent,
                        std::uint64_t seed, std::uint64_t window) {
  return RunSpec{{Stage{game, episodes}}, agent, seed, window};
}

std::uint64_t RunSpec::episodes() const {
  std::uint64_t total = 0;
  for (const Stage& s : schedule) total += s.episodes;
  return total;
}

void RunSpec::validate() const {
  for (const Stage& s : schedule) s.game.validate();
  agent.policy.validate();
  const std::uint64_t total = episodes();
  if (total > 0 && (window == 0 || total % window != 0)) {
    throw std::invalid_argument("report window " + std::to_string(window) +
                                " must divide the episode count " + std::to_string(total));
  }
}

std::vector<Stage> mixed_density_schedule(int rows, int cols, std::vector<int> mine_counts,
                                          std::uint64_t episodes_per_stage) {
  std::sort(mine_counts.begin(), mine_counts.end());
  std::vector<Stage> stages;
  for (int mines : mine_counts) stages.push_back({GameConfig{rows, cols, mines, 0}, episodes_per_stage});
  return stages;
}

template <class Key, class Hash>
TableSummary summarize(const ValueTable<Key, Hash>& table) {
  TableSummary s;
  s.distinct = table.size();
  double n_perfect = 0, n_other = 0;
  std::vector<double> qs;
  qs.reserve(table.size());
  for (const auto& [key, stats] : table.entries()) {
    qs.push_back(stats.q);
    if (stats.perfect()) {
      ++s.perfect.keys;
      n_perfect += static_cast<double>(stats.n);
    } else {
      ++s.non_perfect.keys;
      n_other += static_cast<double>(stats.n);
    }
  }
  s.all.keys = s.distinct;
  if (s.perfect.keys) s.perfect.mean_n = n_perfect / static_cast<double>(s.perfect.keys);
  if (s.non_perfect.keys) s.non_perfect.mean_n = n_other / static_cast<double>(s.non_perfect.keys);
  if (s.all.keys) s.all.mean_n = (n_perfect + n_other) / static_cast<double>(s.all.keys);

  std::sort(qs.begin(), qs.end());
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i + 1 < qs.size() && qs[i + 1] == qs[i]) continue;
    s.q_ecdf.push_back({qs[i], static_cast<double>(i + 1) / static_cast<double>(qs.size())});
  }
  return s;
}

template TableSummary summarize(const ActionTable&);
template TableSummary summarize(const StateActionTable&);

std::optional<double> TrainingReport::final_win_rate() const {
  if (episodes == 0) return std::nullopt;
  return static_cast<double>(wins) / static_cast<double>(episodes);
}

EpisodeResult play_episode(const GameConfig& config, BanditPlayer& player, const AgentState& agent,
                           std::uint64_t decision_seed) {
  GameState game(config);
  player.reset(decision_seed);
  EpisodeResult result;
  while (!game.finished()) {
    const Move move = player.choose_move(game);
    player.apply_move(game, move);
    ++result.plays;
    result.flags_used += move.kind == MoveKind::PlaceFlag;
  }
  player.settle_end_of_game(game);
  result.won = game.status() == GameStatus::Won;
  result.table_size_after = agent.table.size();
  result.perfect_count_after = agent.table.perfect_count();
  return result;
}

EpisodeResult play_episode(const GameConfig& config, AgentState& agent,
                           std::uint64_t decision_seed) {
  BanditPlayer player(agent, decision_seed);
  return play_episode(config, player, agent, decision_seed);
}

TrainingResult train(const RunSpec& spec) { return train(spec, AgentState{spec.agent, {}, 0}); }

TrainingResult train(const RunSpec& spec, AgentState agent) {
  RunSpec checked = spec;
  checked.agent = agent.options;
  checked.validate();

  TrainingResult out{TrainingReport{}, std::move(agent)};
  AgentState& learner = out.agent;
  TrainingReport& report = out.report;
  BanditPlayer player(learner, 0);
  const std::uint64_t decision_master = spec.seed ^ learner.options.policy.seed;

  WindowStat window;
  for (std::size_t s = 0; s < spec.schedule.size(); ++s) {
    const Stage& stage = spec.schedule[s];
    for (std::uint64_t e = 0; e < stage.episodes; ++e) {
      GameConfig game = stage.game;
      game.seed = derive_seed(spec.seed, s, e, Stream::Game);
      const EpisodeResult r =
          play_episode(game, player, learner, derive_seed(decision_master, s, e, Stream::Decisions));
      ++report.episodes;
      report.wins += r.won;
      ++window.episodes;
      window.wins += r.won;
      if (window.episodes == spec.window) {
        window.episodes_end = report.episodes;
        window.table_size = r.table_size_after;
        window.perfect_count = r.perfect_count_after;
        report.windows.push_back(window);
        window = WindowStat{};
      }
    }
  }
  report.table = summarize(learner.table);
  return out;
}

EvalResult evaluate(const AgentState& frozen, const GameConfig& config, std::uint64_t episodes,
                    std::uint64_t seed, unsigned threads) {
  if (frozen.options.learning) {
    throw std::invalid_argument("evaluation requires a frozen agent (learning disabled)");
  }
  config.validate();
  constexpr std::uint64_t kChunk = 256;
  const std::size_t chunks = static_cast<std::size_t>((episodes + kChunk - 1) / kChunk);
  std::vector<std::uint64_t> wins(chunks, 0);
  const std::uint64_t decision_master = seed ^ frozen.options.policy.seed;
  parallel_for(chunks, threads, [&](std::size_t chunk) {
    BanditPlayer player(frozen, 0);
    const std::uint64_t begin = chunk * kChunk;
    const std::uint64_t end = std::min(episodes, begin + kChunk);
    for (std::uint64_t e = begin; e < end; ++e) {
      GameConfig game = config;
      game.seed = derive_seed(seed, kEvalStage, e, Stream::Game);
      wins[chunk] += play_episode(game, player, frozen,
                                  derive_seed(decision_master, kEvalStage, e, Stream::Decisions))
                         .won;
    }
  });
  EvalResult result{episodes, 0};
  for (std::uint64_t w : wins) result.wins += w;
  return result;
}

SATrainingResult train_sa(const GameConfig& config, std::uint64_t episodes, std::uint64_t seed,
                          std::uint64_t window) {
  config.validate();
  if (episodes > 0 && (window == 0 || episodes % window != 0)) {
    throw std::invalid_argument("report window must divide the episode count");
  }
  SATrainingResult out;
  TrainingReport& report = out.report;
  WindowStat current;
  for (std::uint64_t e = 0; e < episodes; ++e) {
    GameConfig game = config;
    game.seed = derive_seed(seed, 0, e, Stream::Game);
    const SAEpisode r = play_sa_episode(game, out.agent, derive_seed(seed, 0, e, Stream::Decisions));
    ++report.episodes;
    report.wins += r.won;
    ++current.episodes;
    current.wins += r.won;
    if (current.episodes == window) {
      current.episodes_end = report.episodes;
      current.table_size = out.agent.table.size();
      current.perfect_count = out.agent.table.perfect_count();
      report.windows.push_back(current);
      current = WindowStat{};
    }
  }
  report.table = summarize(out.agent.table);
  return out;
}

int mines_for_density(int rows, int cols, double density) {
  const int tiles = rows * cols;
  const int rounded = static_cast<int>(std::lround(tiles * density));
  return std::clamp(rounded, std::min(1, tiles - 1), tiles - 1);
}

std::vector<SweepCell> sweep(const std::vector<int>& rows, const std::vector<int>& cols,
                             const std::vector<double>& densities, std::uint64_t episodes,
                             const AgentOptions& agent, std::uint64_t seed, unsigned threads) {
  std::vector<SweepCell> cells;
  for (int r : rows) {
    for (int c : cols) {
      for (double d : densities) cells.push_back({r, c, d, mines_for_density(r, c, d), 0.0, 0});
    }
  }
  for (const SweepCell& cell : cells) GameConfig{cell.rows, cell.cols, cell.mines, 0}.validate();
  parallel_for(cells.size(), threads, [&](std::size_t i) {
    SweepCell& cell = cells[i];
    const GameConfig game{cell.rows, cell.cols, cell.mines, 0};
    const TrainingResult run =
        train(RunSpec::single(game, episodes, agent, seed, std::max<std::uint64_t>(episodes, 1)));
    cell.win_rate = run.report.final_win_rate().value_or(0.0);
    cell.keys = run.agent.table.size();
  });
  return cells;
}

std::vector<SweepCell> sweep_dimensions(const std::vector<int>& rows, const std::vector<int>& cols,
                                        double density, std::uint64_t episodes,
                                        std::uint64_t seed, unsigned threads) {
  return sweep(rows, cols, {density}, episodes, AgentOptions{}, seed, threads);
}

std::vector<SweepCell> sweep_density(const std::vector<int>& heights, int width,
                                     const std::vector<double>& densities,
                                     std::uint64_t episodes, std::uint64_t seed,
                                     unsigned threads) {
  return sweep(heights, {width}, densities, episodes, AgentOptions{}, seed, threads);
}

void write_windows_csv(std::ostream& out, const TrainingReport& report) {
  out << "episodes_end,window_episodes,window_wins,window_win_rate,cumulative_win_rate,"
         "table_size,perfect_count\n";
  std::uint64_t wins = 0;
  for (const WindowStat& w : report.windows) {
    wins += w.wins;
    out << w.episodes_end << ',' << w.episodes << ',' << w.wins << ','
        << format_double(w.win_rate()) << ','
        << format_double(static_cast<double>(wins) / static_cast<double>(w.episodes_end)) << ','
        << w.table_size << ',' << w.perfect_count << '\n';
  }
}

void write_ecdf_csv(std::ostream& out, const TableSummary& summary) {
  out << "q,fraction\n";
  for (const EcdfPoint& p : summary.q_ecdf) {
    out << format_double(p.q) << ',' << format_double(p.fraction) << '\n';
  }
}

void write_counts_csv(std::ostream& out, const TableSummary& summary) {
  out << "group,keys,mean_n\n";
  if (summary.distinct == 0) return;
  const auto row = [&](const char* name, const CountSummary& c) {
    out << name << ',' << c.keys << ',' << format_double(c.mean_n) << '\n';
  };
  row("perfect", summary.perfect);
  row("non_perfect", summary.non_perfect);
  row("all", summary.all);
}

void write_keys_csv(std::ostream& out, const ActionTable& table) {
  out << "key,q,n\n";
  for (const auto& [key, stats] : table.sorted()) {
    out << encode(key) << ',' << format_double(stats.q) << ',' << stats.n << '\n';
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepCell>& cells) {
  out << "rows,cols,density,mines,win_rate,keys\n";
  for (const SweepCell& c : cells) {
    out << c.rows << ',' << c.cols << ',' << format_double(c.density) << ',' << c.mines << ','
        << format_double(c.win_rate) << ',' << c.keys << '\n';
  }
}

}  // namespace banditsweeper
