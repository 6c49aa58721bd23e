// Minesweeper game mechanics: seeded boards with a safe first click,
// recursive reveal, flags and win/loss tracking.
#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace banditsweeper {

struct Coord {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Tiles kept free of mines by the first reveal.
enum class SafeZone : std::uint8_t {
  /// Only the clicked tile.
  Tile,
  /// The clicked tile and its in-board neighbors, so the first reveal opens a
  /// zero region. Falls back to Tile when the rest of the board cannot hold
  /// every mine.
  Neighborhood,
};

/// A game setting r x c x b plus the seed that drives mine placement.
struct GameConfig {
  int rows = 8;
  int cols = 8;
  int mines = 10;
  std::uint64_t seed = 0;
  SafeZone safe_zone = SafeZone::Neighborhood;

  int tiles() const { return rows * cols; }
  double density() const { return static_cast<double>(mines) / tiles(); }

  /// Throws std::invalid_argument unless rows, cols >= 1 and
  /// 0 <= mines <= rows * cols - 1.
  void validate() const;
  std::string label() const;  // "8x8x10"
};

enum class Visibility : std::uint8_t { Covered, Exposed, Flagged };
enum class GameStatus : std::uint8_t { InProgress, Won, Lost };
enum class RevealOutcome : std::uint8_t { Safe, Mine };

// The 12 distinguishable appearances of a board position. The numeric order
// is the symbol order used when comparing encoded windows.
enum class TileView : std::uint8_t {
  OutOfBounds = 0,
  Exposed0 = 1,
  Exposed1,
  Exposed2,
  Exposed3,
  Exposed4,
  Exposed5,
  Exposed6,
  Exposed7,
  Exposed8,
  Covered = 10,
  Flagged = 11,
};

inline constexpr int kTileViewCount = 12;

constexpr TileView exposed_view(int adjacent_mines) {
  return static_cast<TileView>(static_cast<int>(TileView::Exposed0) + adjacent_mines);
}
constexpr bool is_exposed(TileView v) {
  return v >= TileView::Exposed0 && v <= TileView::Exposed8;
}
constexpr int exposed_count(TileView v) {
  return static_cast<int>(v) - static_cast<int>(TileView::Exposed0);
}

class GameState {
 public:
  /// All tiles covered; mines are placed on the first reveal.
  explicit GameState(const GameConfig& config);

  /// A game whose mine layout is fixed up front; the first reveal does not
  /// re-place mines (it may therefore hit one). Intended for scripted
  /// positions in tests and examples.
  static GameState with_mines(const GameConfig& config, std::span<const Coord> mines);

  RevealOutcome reveal(Coord at);
  void toggle_flag(Coord at);

  /// Mined neighbors among the (up to) eight in-board neighbors.
  int adjacency(Coord at) const;

  const GameConfig& config() const { return config_; }
  int rows() const { return config_.rows; }
  int cols() const { return config_.cols; }
  GameStatus status() const { return status_; }
  bool finished() const { return status_ != GameStatus::InProgress; }
  int plays_made() const { return plays_made_; }
  int flags_placed() const { return flags_placed_; }
  int exposed_safe() const { return exposed_safe_; }
  bool mines_placed() const { return mines_placed_; }

  bool in_bounds(Coord at) const {
    return at.row >= 0 && at.row < config_.rows && at.col >= 0 && at.col < config_.cols;
  }
  int index(Coord at) const { return at.row * config_.cols + at.col; }
  Coord coord(int index) const { return {index / config_.cols, index % config_.cols}; }

  Visibility visibility(Coord at) const { return visibility_[index(at)]; }
  /// Throws std::logic_error while mines are still unplaced.
  bool is_mine(Coord at) const;
  /// What a player sees at `at`, including positions off the board.
  TileView view(Coord at) const;

  std::string to_string(bool show_mines = false) const;

 private:
  void place_mines(Coord safe);
  void compute_adjacency();
  void expose_from(int start);
  void require_in_progress(Coord at, const char* op) const;

  GameConfig config_;
  std::mt19937_64 rng_;
  std::vector<std::uint8_t> mine_;
  std::vector<std::uint8_t> adjacent_;
  std::vector<Visibility> visibility_;
  GameStatus status_ = GameStatus::InProgress;
  bool mines_placed_ = false;
  int plays_made_ = 0;
  int flags_placed_ = 0;
  int exposed_safe_ = 0;
};

inline GameState new_game(const GameConfig& config) { return GameState(config); }

}  // namespace banditsweeper
