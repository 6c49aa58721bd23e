#include "banditsweeper/sa_baseline.hpp"

#include <charconv>
#include <stdexcept>
#include <vector>

#include "banditsweeper/actionspace.hpp"

namespace banditsweeper {

StateKey StateKey::of(const GameState& game) {
  std::string board = std::to_string(game.rows()) + "x" + std::to_string(game.cols()) + ":";
  board.reserve(board.size() + static_cast<std::size_t>(game.config().tiles()));
  for (int idx = 0; idx < game.config().tiles(); ++idx) {
    board.push_back(symbol_char(game.view(game.coord(idx))));
  }
  return StateKey{std::move(board)};
}

Coord sa_choose(const GameState& game, const SAAgent& agent, Rng& rng) {
  if (game.finished()) throw std::logic_error("sa_choose on a finished game");
  if (game.exposed_safe() == 0) {
    // Blank board: every pair is untried or equally safe, so pick uniformly.
    std::vector<int> covered;
    for (int idx = 0; idx < game.config().tiles(); ++idx) {
      if (game.visibility(game.coord(idx)) == Visibility::Covered) covered.push_back(idx);
    }
    if (covered.empty()) throw std::logic_error("no covered tile left to play");
    return game.coord(covered[std::uniform_int_distribution<std::size_t>(0, covered.size() - 1)(rng)]);
  }
  StateAction probe{StateKey::of(game), 0};
  int best = -1;
  ActionStats best_stats;
  std::uint64_t ties = 0;
  for (int idx = 0; idx < game.config().tiles(); ++idx) {
    if (game.visibility(game.coord(idx)) != Visibility::Covered) continue;
    probe.tile = idx;
    const ActionStats s = agent.table.get(probe);
    if (best < 0 || s.q < best_stats.q || (s.q == best_stats.q && s.n > best_stats.n)) {
      best = idx;
      best_stats = s;
      ties = 1;
    } else if (s.q == best_stats.q && s.n == best_stats.n &&
               std::uniform_int_distribution<std::uint64_t>(0, ties++)(rng) == 0) {
      best = idx;
    }
  }
  if (best < 0) throw std::logic_error("no covered tile left to play");
  return game.coord(best);
}

const ActionStats& sa_update(SAAgent& agent, const StateKey& state, int tile, double reward) {
  return agent.table.update(StateAction{state, tile}, reward);
}

SAEpisode play_sa_episode(const GameConfig& config, SAAgent& agent, std::uint64_t decision_seed) {
  GameState game(config);
  Rng rng(decision_seed);
  SAEpisode result;
  while (!game.finished()) {
    StateKey state = StateKey::of(game);
    const Coord at = sa_choose(game, agent, rng);
    const RevealOutcome outcome = game.reveal(at);
    ++result.plays;
    if (agent.learning) sa_update(agent, state, game.index(at), reward_of(outcome));
  }
  result.won = game.status() == GameStatus::Won;
  return result;
}

std::string encode(const StateAction& sa) {
  return sa.state.board + "@" + std::to_string(sa.tile);
}

StateAction decode_state_action(std::string_view text) {
  const auto at = text.rfind('@');
  const auto colon = text.find(':');
  if (at == std::string_view::npos || colon == std::string_view::npos || colon > at) {
    throw std::invalid_argument("bad state-action key '" + std::string(text) + "'");
  }
  int tile = -1;
  const auto digits = text.substr(at + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), tile);
  const std::size_t board_tiles = at - colon - 1;
  if (ec != std::errc{} || ptr != digits.data() + digits.size() || tile < 0 ||
      static_cast<std::size_t>(tile) >= board_tiles) {
    throw std::invalid_argument("bad tile index in state-action key '" + std::string(text) + "'");
  }
  return StateAction{StateKey{std::string(text.substr(0, at))}, tile};
}

}  // namespace banditsweeper
