#include "banditsweeper/engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace banditsweeper {

namespace {

constexpr int kNeighborOffsets[8][2] = {
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
};

std::string coord_text(Coord at) {
  return "(" + std::to_string(at.row) + "," + std::to_string(at.col) + ")";
}

}  // namespace

void GameConfig::validate() const {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("board must have at least one row and one column, got " +
                                label());
  }
  if (mines < 0) throw std::invalid_argument("mine count must be non-negative, got " + label());
  if (mines > rows * cols - 1) {
    throw std::invalid_argument("no safe first click on " + label() + ": at most " +
                                std::to_string(rows * cols - 1) + " mines fit");
  }
}

std::string GameConfig::label() const {
  return std::to_string(rows) + "x" + std::to_string(cols) + "x" + std::to_string(mines);
}

GameState::GameState(const GameConfig& config)
    : config_(config),
      rng_(config.seed),
      mine_(static_cast<std::size_t>(std::max(config.tiles(), 0)), 0),
      adjacent_(mine_.size(), 0),
      visibility_(mine_.size(), Visibility::Covered) {
  config_.validate();
}

GameState GameState::with_mines(const GameConfig& config, std::span<const Coord> mines) {
  GameConfig fixed = config;
  fixed.mines = static_cast<int>(mines.size());
  GameState game(fixed);
  for (Coord m : mines) {
    if (!game.in_bounds(m)) throw std::invalid_argument("mine outside board at " + coord_text(m));
    auto& cell = game.mine_[game.index(m)];
    if (cell) throw std::invalid_argument("duplicate mine at " + coord_text(m));
    cell = 1;
  }
  game.mines_placed_ = true;
  game.compute_adjacency();
  return game;
}

void GameState::require_in_progress(Coord at, const char* op) const {
  if (finished()) throw std::logic_error(std::string(op) + " on a finished game");
  if (!in_bounds(at)) throw std::logic_error(std::string(op) + " outside board at " + coord_text(at));
}

void GameState::place_mines(Coord safe) {
  std::vector<std::uint8_t> excluded(mine_.size(), 0);
  int free_tiles = config_.tiles() - 1;
  excluded[index(safe)] = 1;
  if (config_.safe_zone == SafeZone::Neighborhood) {
    int neighbors = 0;
    for (const auto& d : kNeighborOffsets) neighbors += in_bounds({safe.row + d[0], safe.col + d[1]});
    if (free_tiles - neighbors >= config_.mines) {
      free_tiles -= neighbors;
      for (const auto& d : kNeighborOffsets) {
        const Coord n{safe.row + d[0], safe.col + d[1]};
        if (in_bounds(n)) excluded[index(n)] = 1;
      }
    }
  }
  std::vector<int> pool;
  pool.reserve(static_cast<std::size_t>(free_tiles));
  for (int i = 0; i < config_.tiles(); ++i) {
    if (!excluded[i]) pool.push_back(i);
  }
  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(config_.mines));
  std::sample(pool.begin(), pool.end(), std::back_inserter(chosen), config_.mines, rng_);
  for (int i : chosen) mine_[i] = 1;
  mines_placed_ = true;
  compute_adjacency();
}

void GameState::compute_adjacency() {
  for (int r = 0; r < config_.rows; ++r) {
    for (int c = 0; c < config_.cols; ++c) {
      int count = 0;
      for (const auto& d : kNeighborOffsets) {
        Coord n{r + d[0], c + d[1]};
        if (in_bounds(n) && mine_[index(n)]) ++count;
      }
      adjacent_[index({r, c})] = static_cast<std::uint8_t>(count);
    }
  }
}

RevealOutcome GameState::reveal(Coord at) {
  require_in_progress(at, "reveal");
  if (visibility(at) != Visibility::Covered) {
    throw std::logic_error("reveal of a tile that is not covered at " + coord_text(at));
  }
  if (!mines_placed_) place_mines(at);
  ++plays_made_;

  const int i = index(at);
  if (mine_[i]) {
    visibility_[i] = Visibility::Exposed;
    status_ = GameStatus::Lost;
    return RevealOutcome::Mine;
  }
  expose_from(i);
  if (exposed_safe_ == config_.tiles() - config_.mines) status_ = GameStatus::Won;
  return RevealOutcome::Safe;
}

// Flags block the fill and are left in place.
void GameState::expose_from(int start) {
  std::vector<int> stack{start};
  visibility_[start] = Visibility::Exposed;
  ++exposed_safe_;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    if (adjacent_[i] != 0) continue;
    const Coord at = coord(i);
    for (const auto& d : kNeighborOffsets) {
      Coord n{at.row + d[0], at.col + d[1]};
      if (!in_bounds(n)) continue;
      const int j = index(n);
      if (visibility_[j] != Visibility::Covered) continue;
      visibility_[j] = Visibility::Exposed;
      ++exposed_safe_;
      stack.push_back(j);
    }
  }
}

void GameState::toggle_flag(Coord at) {
  require_in_progress(at, "toggle_flag");
  auto& v = visibility_[index(at)];
  switch (v) {
    case Visibility::Covered:
      v = Visibility::Flagged;
      ++flags_placed_;
      break;
    case Visibility::Flagged:
      v = Visibility::Covered;
      --flags_placed_;
      break;
    case Visibility::Exposed:
      throw std::logic_error("cannot flag exposed tile at " + coord_text(at));
  }
  ++plays_made_;
}

int GameState::adjacency(Coord at) const {
  if (!mines_placed_) throw std::logic_error("adjacency queried before mines were placed");
  return adjacent_[index(at)];
}

bool GameState::is_mine(Coord at) const {
  if (!mines_placed_) throw std::logic_error("mine layout queried before the first reveal");
  return mine_[index(at)] != 0;
}

TileView GameState::view(Coord at) const {
  if (!in_bounds(at)) return TileView::OutOfBounds;
  const int i = index(at);
  switch (visibility_[i]) {
    case Visibility::Covered:
      return TileView::Covered;
    case Visibility::Flagged:
      return TileView::Flagged;
    case Visibility::Exposed:
      break;
  }
  return exposed_view(adjacent_[i]);
}

std::string GameState::to_string(bool show_mines) const {
  std::ostringstream out;
  for (int r = 0; r < config_.rows; ++r) {
    for (int c = 0; c < config_.cols; ++c) {
      const Coord at{r, c};
      const TileView v = view(at);
      char ch = '.';
      if (v == TileView::Flagged) {
        ch = 'F';
      } else if (is_exposed(v)) {
        ch = mine_[index(at)] ? '*' : static_cast<char>('0' + exposed_count(v));
      } else if (show_mines && mines_placed_ && mine_[index(at)]) {
        ch = 'm';
      }
      out << ch;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace banditsweeper
