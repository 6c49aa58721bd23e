// Full-board state-action greedy baseline for small boards.
//
// Values are keyed by the whole observable board plus the tile to uncover.
// The agent never flags and learns only from the tiles it uncovers.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "banditsweeper/engine.hpp"
#include "banditsweeper/rng.hpp"
#include "banditsweeper/value_table.hpp"

namespace banditsweeper {

/// Observable board "RxC:" followed by one symbol per tile, row-major.
/// Independent of the hidden mine layout.
struct StateKey {
  std::string board;

  static StateKey of(const GameState& game);
  friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

struct StateAction {
  StateKey state;
  int tile = 0;  // row-major index of the uncovered tile

  friend auto operator<=>(const StateAction&, const StateAction&) = default;
};

struct StateActionHash {
  std::size_t operator()(const StateAction& sa) const noexcept {
    return std::hash<std::string>{}(sa.state.board) ^
           (static_cast<std::size_t>(sa.tile) * 0x9e3779b97f4a7c15ULL);
  }
};

using StateActionTable = ValueTable<StateAction, StateActionHash>;

struct SAAgent {
  StateActionTable table;
  bool learning = true;
};

/// Covered tile with the lowest Q(s, a); ties by larger N, then uniformly.
Coord sa_choose(const GameState& game, const SAAgent& agent, Rng& rng);

/// Same incremental-mean rule as the bandit, keyed by (state, tile index).
const ActionStats& sa_update(SAAgent& agent, const StateKey& state, int tile, double reward);

struct SAEpisode {
  bool won = false;
  int plays = 0;
};

/// Plays one game to the end, learning from each uncover when enabled.
SAEpisode play_sa_episode(const GameConfig& config, SAAgent& agent, std::uint64_t decision_seed);

/// Text form of a state-action key for persistence: "<board>@<tile>".
std::string encode(const StateAction& sa);
/// Throws std::invalid_argument on malformed input.
StateAction decode_state_action(std::string_view text);

}  // namespace banditsweeper
