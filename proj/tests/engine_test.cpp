#include <doctest.h>

#include <algorithm>
#include <array>
#include <queue>
#include <random>
#include <stdexcept>
#include <vector>

#include "banditsweeper/engine.hpp"

using namespace banditsweeper;

namespace {

int count_mines(const GameState& g) {
  int n = 0;
  for (int i = 0; i < g.config().tiles(); ++i) n += g.is_mine(g.coord(i));
  return n;
}

// Neighbor mine count straight from the layout.
int oracle_adjacency(const GameState& g, Coord at) {
  int n = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      const Coord nb{at.row + dr, at.col + dc};
      if ((dr || dc) && g.in_bounds(nb) && g.is_mine(nb)) ++n;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("a fresh game is fully covered") {
  const GameState g(GameConfig{8, 8, 10, 42});
  CHECK(g.status() == GameStatus::InProgress);
  CHECK(g.flags_placed() == 0);
  CHECK_FALSE(g.mines_placed());
  for (int i = 0; i < 64; ++i) CHECK(g.view(g.coord(i)) == TileView::Covered);
  CHECK_THROWS_AS((void)g.is_mine({0, 0}), std::logic_error);
}

TEST_CASE("configuration limits") {
  CHECK_THROWS_AS(GameState(GameConfig{8, 8, 64, 0}), std::invalid_argument);
  CHECK_THROWS_AS(GameState(GameConfig{0, 8, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(GameState(GameConfig{3, 3, -1, 0}), std::invalid_argument);
  CHECK_NOTHROW(GameState(GameConfig{8, 8, 63, 0}));
  CHECK(GameConfig{8, 8, 10, 0}.label() == "8x8x10");
}

TEST_CASE("single tile board is won by its only reveal") {
  GameState g(GameConfig{1, 1, 0, 3});
  CHECK(g.reveal({0, 0}) == RevealOutcome::Safe);
  CHECK(g.status() == GameStatus::Won);
  CHECK(g.plays_made() == 1);
}

TEST_CASE("first reveal is safe and places exactly the configured mines") {
  for (SafeZone zone : {SafeZone::Tile, SafeZone::Neighborhood}) {
    std::array<int, 16> mined_count{};
    const Coord first{0, 0};
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      for (int i = 0; i < 16; ++i) {
        GameConfig cfg{4, 4, 5, seed * 16 + static_cast<std::uint64_t>(i), zone};
        GameState g(cfg);
        const Coord at = g.coord(i);
        CHECK(g.reveal(at) == RevealOutcome::Safe);
        CHECK(count_mines(g) == 5);
        CHECK_FALSE(g.is_mine(at));
        if (zone == SafeZone::Neighborhood) {
          // 4x4 leaves at least 7 tiles outside any neighborhood.
          for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
              const Coord nb{at.row + dr, at.col + dc};
              if (g.in_bounds(nb)) CHECK_FALSE(g.is_mine(nb));
            }
          }
        }
        if (at == first) {
          for (int t = 0; t < 16; ++t) mined_count[t] += g.is_mine(g.coord(t));
        }
      }
    }
    if (zone == SafeZone::Tile) {
      // Uniform over the other 15 tiles: 300 * 5 / 15 = 100 expected each.
      for (int t = 1; t < 16; ++t) {
        CHECK(mined_count[t] > 60);
        CHECK(mined_count[t] < 140);
      }
    }
  }
}

TEST_CASE("neighborhood safety falls back to the tile when the board is too full") {
  GameState g(GameConfig{3, 3, 8, 5, SafeZone::Neighborhood});
  CHECK(g.reveal({1, 1}) == RevealOutcome::Safe);
  CHECK(count_mines(g) == 8);
  CHECK(g.status() == GameStatus::Won);
}

TEST_CASE("empty 9x9 board opens completely from the center") {
  GameState g(GameConfig{9, 9, 0, 1});
  CHECK(g.reveal({4, 4}) == RevealOutcome::Safe);
  CHECK(g.exposed_safe() == 81);
  CHECK(g.status() == GameStatus::Won);
  for (int i = 0; i < 81; ++i) CHECK(g.view(g.coord(i)) == TileView::Exposed0);
}

TEST_CASE("adjacency matches a direct recount") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 9);
    const int cols = 1 + static_cast<int>(rng() % 9);
    const int mines = static_cast<int>(rng() % static_cast<std::uint64_t>(rows * cols));
    GameState g(GameConfig{rows, cols, mines, rng(), SafeZone::Tile});
    g.reveal({static_cast<int>(rng() % rows), static_cast<int>(rng() % cols)});
    for (int i = 0; i < rows * cols; ++i) CHECK(g.adjacency(g.coord(i)) == oracle_adjacency(g, g.coord(i)));
  }
}

TEST_CASE("flood fill agrees with a breadth-first oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rows = 2 + static_cast<int>(rng() % 12);
    const int cols = 2 + static_cast<int>(rng() % 12);
    const int tiles = rows * cols;
    const int mines = static_cast<int>(rng() % static_cast<std::uint64_t>(tiles / 4 + 1));
    std::vector<Coord> layout;
    std::vector<int> order(static_cast<std::size_t>(tiles));
    for (int i = 0; i < tiles; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < mines; ++i) layout.push_back({order[i] / cols, order[i] % cols});
    GameState g = GameState::with_mines(GameConfig{rows, cols, 0, 0}, layout);

    // A few flags on random tiles must block the fill and survive it.
    std::vector<char> flagged(static_cast<std::size_t>(tiles), 0);
    for (int f = 0; f < 3; ++f) {
      const int i = static_cast<int>(rng() % tiles);
      if (!flagged[i]) {
        g.toggle_flag(g.coord(i));
        flagged[i] = 1;
      }
    }
    int start = -1;
    for (int k = mines; k < tiles; ++k) {
      if (!flagged[order[k]]) {
        start = order[k];
        break;
      }
    }
    if (start < 0) continue;

    std::vector<char> expect(static_cast<std::size_t>(tiles), 0);
    std::queue<int> frontier;
    frontier.push(start);
    expect[start] = 1;
    while (!frontier.empty()) {
      const int i = frontier.front();
      frontier.pop();
      const Coord at = g.coord(i);
      if (oracle_adjacency(g, at) != 0) continue;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          const Coord nb{at.row + dr, at.col + dc};
          if (!g.in_bounds(nb)) continue;
          const int j = g.index(nb);
          if (expect[j] || flagged[j]) continue;
          expect[j] = 1;
          frontier.push(j);
        }
      }
    }

    REQUIRE(g.reveal(g.coord(start)) == RevealOutcome::Safe);
    int exposed = 0;
    for (int i = 0; i < tiles; ++i) {
      const Visibility v = g.visibility(g.coord(i));
      if (flagged[i]) {
        CHECK(v == Visibility::Flagged);
      } else {
        CHECK((v == Visibility::Exposed) == (expect[i] != 0));
      }
      exposed += expect[i];
    }
    CHECK(g.exposed_safe() == exposed);
  }
}

TEST_CASE("5x5 board with two flagged mines is won after the three safe top tiles") {
  // Mines at (0,0) (0,2) (1,0) (1,4). One click at the bottom opens
  // everything below row 1.
  const std::vector<Coord> mines{{0, 0}, {0, 2}, {1, 0}, {1, 4}};
  GameState g = GameState::with_mines(GameConfig{5, 5, 0, 0}, mines);
  g.reveal({4, 2});
  g.toggle_flag({1, 0});
  g.toggle_flag({1, 4});
  CHECK(g.to_string() ==
        ".....\n"
        "F312F\n"
        "11011\n"
        "00000\n"
        "00000\n");
  CHECK(g.reveal({0, 3}) == RevealOutcome::Safe);
  CHECK(g.reveal({0, 4}) == RevealOutcome::Safe);
  // (0,1) is also forced safe by the 1 at (1,2) once (0,2) holds the mine.
  CHECK(g.status() == GameStatus::InProgress);
  CHECK(g.reveal({0, 1}) == RevealOutcome::Safe);
  CHECK(g.status() == GameStatus::Won);
}

TEST_CASE("revealing a mine loses") {
  const std::vector<Coord> mines{{0, 0}};
  GameState g = GameState::with_mines(GameConfig{2, 2, 0, 0}, mines);
  CHECK(g.reveal({0, 0}) == RevealOutcome::Mine);
  CHECK(g.status() == GameStatus::Lost);
  CHECK_THROWS_AS(g.reveal({1, 1}), std::logic_error);
  CHECK_THROWS_AS(g.toggle_flag({1, 1}), std::logic_error);
}

TEST_CASE("flag toggling") {
  GameState g(GameConfig{4, 4, 2, 9});
  g.toggle_flag({3, 3});
  CHECK(g.visibility({3, 3}) == Visibility::Flagged);
  CHECK(g.view({3, 3}) == TileView::Flagged);
  CHECK(g.flags_placed() == 1);
  CHECK_THROWS_AS(g.reveal({3, 3}), std::logic_error);
  g.toggle_flag({3, 3});
  CHECK(g.visibility({3, 3}) == Visibility::Covered);
  CHECK(g.flags_placed() == 0);
  CHECK(g.plays_made() == 2);
}

TEST_CASE("contract violations") {
  const std::vector<Coord> mines{{0, 0}};
  GameState g = GameState::with_mines(GameConfig{3, 3, 0, 0}, mines);
  CHECK_THROWS_AS(g.reveal({3, 0}), std::logic_error);
  g.reveal({2, 2});  // zero region opens most of the board
  CHECK_THROWS_AS(g.reveal({2, 2}), std::logic_error);
  CHECK_THROWS_AS(g.toggle_flag({2, 2}), std::logic_error);
  CHECK(g.view({-1, 0}) == TileView::OutOfBounds);
  CHECK(g.view({0, 3}) == TileView::OutOfBounds);
}

TEST_CASE("same seed, same game") {
  for (std::uint64_t seed : {1ULL, 77ULL, 123456789ULL}) {
    GameState a(GameConfig{8, 8, 10, seed});
    GameState b(GameConfig{8, 8, 10, seed});
    a.reveal({3, 4});
    b.reveal({3, 4});
    CHECK(a.to_string(true) == b.to_string(true));
  }
  GameState a(GameConfig{8, 8, 10, 1});
  GameState b(GameConfig{8, 8, 10, 2});
  a.reveal({3, 4});
  b.reveal({3, 4});
  CHECK(a.to_string(true) != b.to_string(true));
}
