#include "banditsweeper/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "banditsweeper/harness.hpp"
#include "banditsweeper/persistence.hpp"
#include "banditsweeper/text.hpp"

namespace banditsweeper {

namespace {

struct GameArgs {
  int rows = 8;
  int cols = 8;
  int mines = 10;
  double density = 0.0;
  std::string first_click = "neighborhood";
  CLI::Option* mines_opt = nullptr;
  CLI::Option* density_opt = nullptr;
};

void add_game_options(CLI::App& cmd, GameArgs& g) {
  cmd.add_option("--rows", g.rows, "board rows")->capture_default_str();
  cmd.add_option("--cols", g.cols, "board columns")->capture_default_str();
  g.mines_opt = cmd.add_option("--mines", g.mines, "mine count")->capture_default_str();
  g.density_opt = cmd.add_option("--density", g.density, "mine density, rounded to a mine count");
  g.mines_opt->excludes(g.density_opt);
  cmd.add_option("--first-click", g.first_click,
                 "tiles kept clear by the first reveal: tile or neighborhood")
      ->capture_default_str();
}

SafeZone parse_safe_zone(const std::string& name) {
  if (name == "tile") return SafeZone::Tile;
  if (name == "neighborhood") return SafeZone::Neighborhood;
  throw std::invalid_argument("unknown --first-click '" + name + "' (expected tile, neighborhood)");
}

GameConfig game_config(const GameArgs& g) {
  GameConfig config{g.rows, g.cols, g.mines, 0, parse_safe_zone(g.first_click)};
  if (g.density_opt->count() > 0) {
    if (g.rows < 1 || g.cols < 1) {
      throw std::invalid_argument("board must have at least one row and one column");
    }
    config.mines = mines_for_density(g.rows, g.cols, g.density);
  }
  config.validate();
  return config;
}

struct PolicyArgs {
  std::string policy = "greedy";
  double epsilon = 0.01;
  double c = 0.1;
  bool no_flags = false;
  bool no_symmetry = false;
};

void add_policy_options(CLI::App& cmd, PolicyArgs& p) {
  cmd.add_option("--policy", p.policy, "greedy, egreedy or ucb")->capture_default_str();
  cmd.add_option("--epsilon", p.epsilon, "exploration rate for egreedy")->capture_default_str();
  cmd.add_option("--c", p.c, "exploration weight for ucb")->capture_default_str();
  cmd.add_flag("--no-flags", p.no_flags, "never place flags");
  cmd.add_flag("--no-symmetry", p.no_symmetry, "keep symmetric windows apart");
}

AgentOptions agent_options(const PolicyArgs& p) {
  AgentOptions options;
  options.policy.kind = parse_policy_kind(p.policy);
  if (options.policy.kind == PolicyKind::EpsilonGreedy) options.policy.epsilon = p.epsilon;
  if (options.policy.kind == PolicyKind::Ucb) options.policy.c = p.c;
  options.policy.validate();
  options.flags = !p.no_flags;
  options.symmetry = !p.no_symmetry;
  return options;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

template <class Int>
Int to_int(const std::string& text, const std::string& what) {
  auto v = parse_int<Int>(text);
  if (!v) throw std::invalid_argument("bad " + what + " '" + text + "'");
  return *v;
}

// "10:250000,13:250000"
std::vector<Stage> parse_schedule(const std::string& text, const GameArgs& g) {
  std::vector<Stage> stages;
  for (const std::string& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw std::invalid_argument("schedule items look like mines:episodes");
    GameConfig game{g.rows, g.cols, to_int<int>(parts[0], "schedule mine count"), 0,
                    parse_safe_zone(g.first_click)};
    game.validate();
    stages.push_back({game, to_int<std::uint64_t>(parts[1], "schedule episode count")});
  }
  if (stages.empty()) throw std::invalid_argument("empty schedule");
  std::stable_sort(stages.begin(), stages.end(),
                   [](const Stage& a, const Stage& b) { return a.game.mines < b.game.mines; });
  return stages;
}

// "3..10" or "3,5,8"
std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> values;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = to_int<int>(text.substr(0, dots), what);
    const int hi = to_int<int>(text.substr(dots + 2), what);
    if (lo > hi) throw std::invalid_argument("empty " + what + " range '" + text + "'");
    for (int v = lo; v <= hi; ++v) values.push_back(v);
    return values;
  }
  for (const std::string& part : split(text, ',')) values.push_back(to_int<int>(part, what));
  if (values.empty()) throw std::invalid_argument("empty " + what + " list");
  return values;
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const std::string& part : split(text, ',')) {
    auto v = parse_double(part);
    if (!v) throw std::invalid_argument("bad " + what + " '" + part + "'");
    values.push_back(*v);
  }
  if (values.empty()) throw std::invalid_argument("empty " + what + " list");
  return values;
}

std::uint64_t default_window(std::uint64_t episodes) {
  if (episodes == 0) return 1;
  return episodes % 10000 == 0 ? 10000 : episodes;
}

std::string rate_text(const std::optional<double>& rate) {
  return rate ? format_double(*rate) : std::string("n/a");
}

// Throws when the file cannot be written.
template <class Fn>
void write_file(const std::string& path, Fn&& fill) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  fill(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing " + path);
}

template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& fill) {
  if (path.empty() || path == "-") {
    fill(out);
  } else {
    write_file(path, fill);
  }
}

unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tabular bandit agents for Minesweeper", "banditsweeper"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  const auto add_seed = [&](CLI::App& cmd) {
    cmd.add_option("--seed", seed, "master seed")->envname("BANDITSWEEPER_SEED");
  };

  // train
  auto* train_cmd = app.add_subcommand("train", "train an agent and save its table");
  GameArgs train_game;
  PolicyArgs train_policy;
  std::uint64_t train_episodes = 10000;
  std::uint64_t train_window = 0;
  std::string agent_kind = "mab", schedule, train_in, train_out, train_report;
  add_game_options(*train_cmd, train_game);
  add_policy_options(*train_cmd, train_policy);
  add_seed(*train_cmd);
  auto* episodes_opt =
      train_cmd->add_option("--episodes", train_episodes, "games to play")->capture_default_str();
  auto* schedule_opt = train_cmd->add_option(
      "--schedule", schedule, "mixed densities as mines:episodes,... (played in ascending mines)");
  schedule_opt->excludes(episodes_opt)->excludes(train_game.mines_opt)->excludes(
      train_game.density_opt);
  auto* window_opt =
      train_cmd->add_option("--window", train_window, "episodes per reported window");
  train_cmd->add_option("--agent", agent_kind, "mab or sa")->capture_default_str();
  train_cmd->add_option("--table-in", train_in, "continue training this MAB table");
  train_cmd->add_option("--table-out", train_out, "where to save the table");
  train_cmd->add_option("--report-out", train_report, "windowed win rates as CSV");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "play a frozen table on a game setting");
  GameArgs eval_game;
  std::uint64_t eval_episodes = 10000;
  unsigned eval_threads = default_threads();
  std::string eval_in;
  add_game_options(*eval_cmd, eval_game);
  add_seed(*eval_cmd);
  eval_cmd->add_option("--table-in", eval_in, "table file")->required();
  eval_cmd->add_option("--episodes", eval_episodes, "games to play")->capture_default_str();
  eval_cmd->add_option("--threads", eval_threads, "worker threads");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "train one greedy agent per board cell");
  std::string sweep_rows = "3..10", sweep_cols = "3..10", sweep_density = "0.15625", sweep_out;
  std::uint64_t sweep_episodes = 10000;
  unsigned sweep_threads = default_threads();
  PolicyArgs sweep_policy;
  sweep_cmd->add_option("--rows", sweep_rows, "heights, lo..hi or a comma list")
      ->capture_default_str();
  sweep_cmd->add_option("--cols", sweep_cols, "widths, lo..hi or a comma list")
      ->capture_default_str();
  sweep_cmd->add_option("--density", sweep_density, "comma list of mine densities")
      ->capture_default_str();
  sweep_cmd->add_option("--episodes", sweep_episodes, "games per cell")->capture_default_str();
  sweep_cmd->add_option("--threads", sweep_threads, "cells run in parallel");
  sweep_cmd->add_option("--report-out", sweep_out, "CSV file (stdout when omitted)");
  add_policy_options(*sweep_cmd, sweep_policy);
  add_seed(*sweep_cmd);

  // export
  auto* export_cmd = app.add_subcommand("export", "dump table statistics as CSV");
  std::string export_in, export_out, export_what = "counts";
  export_cmd->add_option("--table-in", export_in, "table file")->required();
  export_cmd->add_option("--what", export_what, "counts, ecdf or keys")->capture_default_str();
  export_cmd->add_option("--report-out", export_out, "CSV file (stdout when omitted)");

  // patterns
  auto* patterns_cmd = app.add_subcommand("patterns", "list perfect actions as 3x3 motifs");
  std::string patterns_in;
  std::uint64_t min_count = 1;
  patterns_cmd->add_option("--table-in", patterns_in, "MAB table file")->required();
  patterns_cmd->add_option("--min-count", min_count, "minimum N")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (train_cmd->parsed()) {
      std::vector<Stage> stages;
      if (schedule_opt->count() > 0) {
        stages = parse_schedule(schedule, train_game);
      } else {
        stages.push_back({game_config(train_game), train_episodes});
      }
      std::uint64_t total = 0;
      for (const Stage& s : stages) total += s.episodes;
      const std::uint64_t window = window_opt->count() > 0 ? train_window : default_window(total);

      TrainingReport report;
      if (agent_kind == "sa") {
        if (stages.size() != 1) throw std::invalid_argument("the sa agent takes a single setting");
        if (!train_in.empty()) throw std::invalid_argument("the sa agent cannot continue a table");
        SATrainingResult run = train_sa(stages[0].game, stages[0].episodes, seed, window);
        if (!train_out.empty()) save_table(train_out, run.agent, stages[0].game);
        report = std::move(run.report);
        out << "episodes " << report.episodes << " wins " << report.wins << " win_rate "
            << rate_text(report.final_win_rate()) << " pairs " << report.table.distinct
            << " perfect " << report.table.perfect.keys << '\n';
      } else if (agent_kind == "mab") {
        RunSpec spec{stages, agent_options(train_policy), seed, window};
        AgentState start{spec.agent, {}, 0};
        if (!train_in.empty()) {
          LoadedTable loaded = load_table(train_in);
          if (loaded.header.kind != TableKind::Mab) {
            throw std::invalid_argument("--table-in must hold a MAB table to continue training");
          }
          start = std::move(loaded.mab);
          start.options.learning = true;
        }
        TrainingResult run = train(spec, std::move(start));
        if (!train_out.empty()) save_table(train_out, run.agent, stages.back().game);
        report = std::move(run.report);
        out << "episodes " << report.episodes << " wins " << report.wins << " win_rate "
            << rate_text(report.final_win_rate()) << " keys " << report.table.distinct
            << " perfect " << report.table.perfect.keys << '\n';
      } else {
        throw std::invalid_argument("unknown --agent '" + agent_kind + "' (expected mab, sa)");
      }
      if (!train_report.empty()) {
        write_file(train_report, [&](std::ostream& f) { write_windows_csv(f, report); });
      }
      return 0;
    }

    if (eval_cmd->parsed()) {
      const GameConfig config = game_config(eval_game);
      LoadedTable loaded = load_table(eval_in);
      std::uint64_t wins = 0;
      if (loaded.header.kind == TableKind::Mab) {
        wins = evaluate(loaded.mab, config, eval_episodes, seed, eval_threads).wins;
      } else {
        for (std::uint64_t e = 0; e < eval_episodes; ++e) {
          GameConfig game = config;
          game.seed = derive_seed(seed, 0, e, Stream::Game);
          wins += play_sa_episode(game, loaded.sa, derive_seed(seed, 0, e, Stream::Decisions)).won;
        }
      }
      const EvalResult result{eval_episodes, wins};
      out << "setting " << config.label() << " episodes " << eval_episodes << " wins " << wins
          << " win_rate " << (eval_episodes ? format_double(result.win_rate()) : "n/a") << '\n';
      return 0;
    }

    if (sweep_cmd->parsed()) {
      const auto rows = parse_int_list(sweep_rows, "rows");
      const auto cols = parse_int_list(sweep_cols, "cols");
      const auto densities = parse_double_list(sweep_density, "density");
      const auto cells =
          sweep(rows, cols, densities, sweep_episodes, agent_options(sweep_policy), seed,
                sweep_threads);
      emit(sweep_out, out, [&](std::ostream& f) { write_sweep_csv(f, cells); });
      return 0;
    }

    if (export_cmd->parsed()) {
      const LoadedTable loaded = load_table(export_in);
      const bool mab = loaded.header.kind == TableKind::Mab;
      const TableSummary summary = mab ? summarize(loaded.mab.table) : summarize(loaded.sa.table);
      if (export_what == "counts") {
        emit(export_out, out, [&](std::ostream& f) { write_counts_csv(f, summary); });
      } else if (export_what == "ecdf") {
        emit(export_out, out, [&](std::ostream& f) { write_ecdf_csv(f, summary); });
      } else if (export_what == "keys") {
        if (!mab) throw std::invalid_argument("--what keys needs a MAB table");
        emit(export_out, out, [&](std::ostream& f) { write_keys_csv(f, loaded.mab.table); });
      } else {
        throw std::invalid_argument("unknown --what '" + export_what +
                                    "' (expected counts, ecdf, keys)");
      }
      return 0;
    }

    if (patterns_cmd->parsed()) {
      const LoadedTable loaded = load_table(patterns_in);
      if (loaded.header.kind != TableKind::Mab) {
        throw std::invalid_argument("patterns needs a MAB table");
      }
      auto entries = loaded.mab.table.sorted();
      std::erase_if(entries, [&](const auto& e) {
        return !e.second.perfect() || e.second.n < min_count;
      });
      // Most played first; the sorted key order settles ties.
      std::stable_sort(entries.begin(), entries.end(),
                       [](const auto& a, const auto& b) { return a.second.n > b.second.n; });
      for (const auto& [key, stats] : entries) {
        out << encode(key) << "  " << (stats.q > 0 ? "mine" : "safe") << "  n=" << stats.n
            << '\n'
            << render_motif(key) << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace banditsweeper
