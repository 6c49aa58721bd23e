// Actions as 3x3 windows around a center tile plus the direction of the
// covered target tile, and their canonical form under the eight symmetries
// of the square.
#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "banditsweeper/engine.hpp"

namespace banditsweeper {

enum class Direction : std::uint8_t { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Direction, 8> kDirections = {
    Direction::N, Direction::NE, Direction::E, Direction::SE,
    Direction::S, Direction::SW, Direction::W, Direction::NW,
};

constexpr bool is_diagonal(Direction d) { return static_cast<int>(d) % 2 == 1; }

/// Row-major slot (0..8) of the tile lying in direction `d` from the center.
constexpr int window_slot(Direction d) {
  constexpr int slots[8] = {1, 2, 5, 8, 7, 6, 3, 0};
  return slots[static_cast<int>(d)];
}

constexpr Coord step(Coord from, Direction d) {
  const int slot = window_slot(d);
  return {from.row + slot / 3 - 1, from.col + slot % 3 - 1};
}

std::string_view direction_name(Direction d);

/// Row-major 3x3 view with the center at slot 4.
using Window = std::array<TileView, 9>;

inline constexpr int kCenterSlot = 4;

struct RawAction {
  Window window{};
  Direction target = Direction::N;
  Coord center;

  Coord target_coord() const { return step(center, target); }
};

/// Packed 10-symbol action identity: window slots 0..8 as 4-bit symbols from
/// the most significant end, direction in the low nibble. Integer order on
/// `code` is lexicographic order on (slot0, ..., slot8, direction).
struct ActionKey {
  std::uint64_t code = 0;

  static ActionKey pack(const Window& window, Direction target);
  Window window() const;
  Direction target() const { return static_cast<Direction>(code & 0xF); }
  TileView at(int slot) const {
    return static_cast<TileView>((code >> (4 * (9 - slot))) & 0xF);
  }

  friend auto operator<=>(const ActionKey&, const ActionKey&) = default;
};

struct ActionKeyHash {
  std::size_t operator()(const ActionKey& k) const noexcept {
    // splitmix64 finalizer
    std::uint64_t z = k.code + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// One element of the dihedral group of the square acting on a window.
/// Index k in 0..3 rotates k quarter turns clockwise; k in 4..7 applies the
/// rotation k - 4 after a mirror across the main diagonal. Index 0 is the
/// identity.
inline constexpr int kSymmetryCount = 8;

ActionKey transform(ActionKey key, int symmetry);
Window transform(const Window& window, int symmetry);
Direction transform(Direction d, int symmetry);
int compose(int outer, int inner);  // transform(transform(x, inner), outer)
int inverse(int symmetry);

/// Lexicographic minimum over the eight symmetric variants; the raw key
/// when `use_symmetry` is false.
ActionKey canonicalize(ActionKey key, bool use_symmetry = true);
ActionKey canonicalize(const RawAction& action, bool use_symmetry = true);

Window read_window(const GameState& game, Coord center);

/// Every (center, direction) pair with an in-board center whose directed
/// neighbor is covered and unflagged. Ordered by center index, then
/// direction.
std::vector<RawAction> enumerate_actions(const GameState& game);

/// Text form "SSSSSSSSS|D": nine symbols from "#012345678CF" ('#' is off
/// the board) and a direction name.
std::string encode(ActionKey key);
std::string encode(const RawAction& action);
/// Throws std::invalid_argument on malformed text or a window that breaks
/// the action invariants (target not covered, center off the board).
ActionKey decode(std::string_view text);

/// Three lines of three characters, target marked '?'.
std::string render_motif(ActionKey key);

char symbol_char(TileView v);

}  // namespace banditsweeper

template <>
struct std::hash<banditsweeper::ActionKey> : banditsweeper::ActionKeyHash {};
